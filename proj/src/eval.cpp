#include "crossling/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crossling {

CosineScorer::CosineScorer(const EmbeddingMatrix& emb, std::string src_lang,
                           std::string tgt_lang)
    : emb_(emb), src_lang_(std::move(src_lang)), tgt_lang_(std::move(tgt_lang)) {
  norms_.resize(emb.num_words());
  for (std::size_t i = 0; i < emb.num_words(); ++i) {
    double n = 0.0;
    for (double v : emb.word_vector(i)) n += v * v;
    norms_[i] = std::sqrt(n);
  }
}

bool CosineScorer::knows_source(std::string_view surface) const {
  auto row = emb_.find(src_lang_, surface);
  return row && norms_[*row] > 0.0;
}

bool CosineScorer::knows_target(std::string_view surface) const {
  auto row = emb_.find(tgt_lang_, surface);
  return row && norms_[*row] > 0.0;
}

double CosineScorer::score(std::string_view src, std::string_view tgt) const {
  auto rs = emb_.find(src_lang_, src);
  auto rt = emb_.find(tgt_lang_, tgt);
  if (!rs || !rt) throw std::invalid_argument("CosineScorer: out-of-vocabulary word");
  auto u = emb_.word_vector(*rs);
  auto v = emb_.word_vector(*rt);
  double dot = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
  return dot / (norms_[*rs] * norms_[*rt]);
}

DiceScorer::DiceScorer(const CooccurrenceStats& stats, const Vocabulary& vocab,
                       DiceDenominator denom)
    : stats_(stats), vocab_(vocab), denom_(denom) {}

bool DiceScorer::knows_source(std::string_view surface) const {
  auto vi = vocab_.find(stats_.src_lang(), surface);
  return vi && stats_.has_src(*vi);
}

bool DiceScorer::knows_target(std::string_view surface) const {
  auto vi = vocab_.find(stats_.tgt_lang(), surface);
  return vi && stats_.has_tgt(*vi);
}

double DiceScorer::score(std::string_view src, std::string_view tgt) const {
  auto ws = vocab_.find(stats_.src_lang(), src);
  auto wt = vocab_.find(stats_.tgt_lang(), tgt);
  if (!ws || !wt) throw std::invalid_argument("DiceScorer: out-of-vocabulary word");
  return dice_similarity(*ws, *wt, stats_, denom_);
}

Model1Scorer::Model1Scorer(const TranslationTable& table, const Vocabulary& vocab)
    : table_(table), vocab_(vocab) {
  for (const auto& row : table.rows)
    for (const auto& [wt, p] : row) target_words_.insert(wt);
}

bool Model1Scorer::knows_source(std::string_view surface) const {
  auto vi = vocab_.find(table_.src_lang, surface);
  return vi && table_.has_source(*vi);
}

bool Model1Scorer::knows_target(std::string_view surface) const {
  auto vi = vocab_.find(table_.tgt_lang, surface);
  return vi && target_words_.count(*vi) > 0;
}

double Model1Scorer::score(std::string_view src, std::string_view tgt) const {
  auto ws = vocab_.find(table_.src_lang, src);
  auto wt = vocab_.find(table_.tgt_lang, tgt);
  if (!ws || !wt) throw std::invalid_argument("Model1Scorer: out-of-vocabulary word");
  return model1_similarity(*ws, *wt, table_);
}

AlignmentLinks greedy_align(const std::vector<std::string>& src_tokens,
                            const std::vector<std::string>& tgt_tokens,
                            const SimilarityFunction& sim) {
  if (src_tokens.empty() || tgt_tokens.empty())
    throw std::invalid_argument("greedy_align: empty token sequence");
  std::vector<bool> tgt_known(tgt_tokens.size());
  for (std::size_t j = 0; j < tgt_tokens.size(); ++j)
    tgt_known[j] = sim.knows_target(tgt_tokens[j]);
  AlignmentLinks links;
  for (std::size_t i = 0; i < src_tokens.size(); ++i) {
    if (!sim.knows_source(src_tokens[i])) continue;
    std::size_t best = tgt_tokens.size();
    double best_score = 0.0;
    for (std::size_t j = 0; j < tgt_tokens.size(); ++j) {
      if (!tgt_known[j]) continue;
      double s = sim.score(src_tokens[i], tgt_tokens[j]);
      if (best == tgt_tokens.size() || s > best_score) {
        best = j;
        best_score = s;
      }
    }
    if (best != tgt_tokens.size())
      links.emplace(static_cast<std::uint32_t>(i + 1), static_cast<std::uint32_t>(best + 1));
  }
  return links;
}

GoldAlignment load_gold_alignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gold alignment file: " + path);
  GoldAlignment gold;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint32_t sent, src, tgt;
    std::string flag;
    if (!(ss >> sent >> src >> tgt >> flag) || (flag != "S" && flag != "P"))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected `sentID srcPos tgtPos S|P`");
    if (sent == 0 || src == 0 || tgt == 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": IDs and positions are 1-based");
    auto& links = gold.sentences[sent];
    if (flag == "S") links.sure.emplace(src, tgt);
    links.possible.emplace(src, tgt);
  }
  return gold;
}

AerResult compute_aer(const std::map<std::uint32_t, AlignmentLinks>& predicted,
                      const GoldAlignment& gold) {
  for (const auto& [sent, links] : gold.sentences)
    if (!predicted.count(sent))
      throw std::invalid_argument("gold alignment references sentence " +
                                  std::to_string(sent) + " absent from predictions");
  AerResult res;
  for (const auto& [sent, links] : predicted) {
    res.predicted += links.size();
    auto it = gold.sentences.find(sent);
    if (it == gold.sentences.end()) continue;
    res.sure += it->second.sure.size();
    for (const auto& link : links) {
      res.hit_sure += it->second.sure.count(link);
      res.hit_possible += it->second.possible.count(link);
    }
  }
  std::uint64_t denom = res.predicted + res.sure;
  res.aer = denom == 0
                ? 0.0
                : 1.0 - static_cast<double>(res.hit_sure + res.hit_possible) /
                            static_cast<double>(denom);
  res.one_minus_aer = 1.0 - res.aer;
  return res;
}

BilingualDictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dictionary file: " + path);
  BilingualDictionary dict;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected `source<TAB>target`");
    auto src_tokens = tokenize(line.substr(0, tab));
    auto tgt_tokens = tokenize(line.substr(tab + 1));
    if (src_tokens.size() != 1 || tgt_tokens.size() != 1) {
      ++dict.dropped_multi_token;
      continue;
    }
    auto pair = std::make_pair(src_tokens[0], tgt_tokens[0]);
    if (!seen.insert(pair).second) {
      ++dict.dropped_duplicates;
      continue;
    }
    dict.entries.push_back(std::move(pair));
  }
  return dict;
}

PAt1Result induce_p_at_1(const SimilarityFunction& sim, const BilingualDictionary& dict,
                         const std::vector<std::string>& target_vocab, bool any_of) {
  if (dict.entries.empty()) throw std::invalid_argument("empty dictionary");
  if (target_vocab.empty()) throw std::invalid_argument("empty target vocabulary");

  // One argmax per distinct source word; reused across its pairs.
  std::map<std::string, std::string> predictions;
  for (const auto& [src, tgt] : dict.entries) {
    if (predictions.count(src) || !sim.knows_source(src)) continue;
    std::size_t best = target_vocab.size();
    double best_score = 0.0;
    for (std::size_t j = 0; j < target_vocab.size(); ++j) {
      if (!sim.knows_target(target_vocab[j])) continue;
      double s = sim.score(src, target_vocab[j]);
      if (best == target_vocab.size() || s > best_score) {
        best = j;
        best_score = s;
      }
    }
    if (best != target_vocab.size()) predictions[src] = target_vocab[best];
  }

  PAt1Result res;
  if (any_of) {
    std::map<std::string, std::set<std::string>> by_source;
    for (const auto& [src, tgt] : dict.entries) by_source[src].insert(tgt);
    res.total_pairs = by_source.size();
    std::size_t correct = 0;
    for (const auto& [src, tgts] : by_source) {
      auto it = predictions.find(src);
      if (it == predictions.end()) continue;
      ++res.scored_pairs;
      correct += tgts.count(it->second);
    }
    if (res.scored_pairs == 0)
      throw std::invalid_argument("all dictionary source words are out of vocabulary");
    res.p_at_1 = static_cast<double>(correct) / static_cast<double>(res.scored_pairs);
    res.coverage =
        static_cast<double>(res.scored_pairs) / static_cast<double>(res.total_pairs);
    return res;
  }

  res.total_pairs = dict.entries.size();
  std::size_t correct = 0;
  for (const auto& [src, tgt] : dict.entries) {
    auto it = predictions.find(src);
    if (it == predictions.end()) continue;
    ++res.scored_pairs;
    correct += it->second == tgt;
  }
  if (res.scored_pairs == 0)
    throw std::invalid_argument("all dictionary source words are out of vocabulary");
  res.p_at_1 = static_cast<double>(correct) / static_cast<double>(res.scored_pairs);
  res.coverage = static_cast<double>(res.scored_pairs) / static_cast<double>(res.total_pairs);
  return res;
}

}  // namespace crossling
