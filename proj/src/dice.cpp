#include "crossling/dice.hpp"

#include <algorithm>
#include <stdexcept>

namespace crossling {

CooccurrenceStats::CooccurrenceStats(const SparseMatrix& indicator, const Vocabulary& vocab,
                                     const std::string& src_lang, const std::string& tgt_lang)
    : src_lang_(src_lang), tgt_lang_(tgt_lang) {
  if (src_lang == tgt_lang)
    throw std::invalid_argument("source and target language must differ");
  if (indicator.row_words.size() != indicator.n_rows)
    throw std::invalid_argument("indicator matrix lacks word provenance");
  src_sentences_.resize(vocab.size());
  src_marginals_.assign(vocab.size(), 0);
  tgt_marginals_.assign(vocab.size(), 0);
  col_targets_.resize(indicator.n_cols);
  for (std::size_t r = 0; r < indicator.n_rows; ++r) {
    std::uint32_t vi = indicator.row_words[r];
    const auto& lang = vocab.word(vi).lang;
    auto cols = indicator.row_cols(r);
    if (lang == src_lang) {
      src_sentences_[vi].assign(cols.begin(), cols.end());
      src_marginals_[vi] = static_cast<std::uint32_t>(cols.size());
    } else if (lang == tgt_lang) {
      tgt_marginals_[vi] = static_cast<std::uint32_t>(cols.size());
      for (std::uint32_t c : cols) col_targets_[c].push_back(vi);
    }
  }
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>& CooccurrenceStats::row(
    std::uint32_t ws) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = row_cache_.find(ws);
  if (it != row_cache_.end()) return it->second;
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  if (ws < src_sentences_.size()) {
    for (std::uint32_t sent : src_sentences_[ws])
      for (std::uint32_t wt : col_targets_[sent]) ++counts[wt];
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row(counts.begin(), counts.end());
  std::sort(row.begin(), row.end());
  return row_cache_.emplace(ws, std::move(row)).first->second;
}

std::uint32_t CooccurrenceStats::pair_count(std::uint32_t ws, std::uint32_t wt) const {
  const auto& r = row(ws);
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(wt, 0u));
  return (it != r.end() && it->first == wt) ? it->second : 0;
}

std::uint32_t CooccurrenceStats::src_marginal(std::uint32_t ws) const {
  return ws < src_marginals_.size() ? src_marginals_[ws] : 0;
}

std::uint32_t CooccurrenceStats::tgt_marginal(std::uint32_t wt) const {
  return wt < tgt_marginals_.size() ? tgt_marginals_[wt] : 0;
}

double dice_similarity(std::uint32_t ws, std::uint32_t wt, const CooccurrenceStats& stats,
                       DiceDenominator denom) {
  double joint = stats.pair_count(ws, wt);
  double src = stats.src_marginal(ws);
  double tgt = stats.tgt_marginal(wt);
  if (src == 0.0 || tgt == 0.0)
    throw std::invalid_argument("dice_similarity: word has no sentence occurrences");
  if (denom == DiceDenominator::product) return 2.0 * joint / (src * tgt);
  return 2.0 * joint / (src + tgt);
}

double dice_via_dot(std::uint32_t ws, std::uint32_t wt, const SparseMatrix& l1) {
  if (l1.row_words.size() != l1.n_rows)
    throw std::invalid_argument("dice_via_dot: matrix lacks word provenance");
  // row_words is ascending by construction.
  auto row_of = [&](std::uint32_t vi) {
    auto it = std::lower_bound(l1.row_words.begin(), l1.row_words.end(), vi);
    if (it == l1.row_words.end() || *it != vi)
      throw std::invalid_argument("dice_via_dot: word not present in matrix");
    return static_cast<std::size_t>(it - l1.row_words.begin());
  };
  std::size_t rs = row_of(ws), rt = row_of(wt);
  auto cols_s = l1.row_cols(rs), cols_t = l1.row_cols(rt);
  auto vals_s = l1.row_values(rs), vals_t = l1.row_values(rt);
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < cols_s.size() && j < cols_t.size()) {
    if (cols_s[i] < cols_t[j]) {
      ++i;
    } else if (cols_s[i] > cols_t[j]) {
      ++j;
    } else {
      dot += vals_s[i] * vals_t[j];
      ++i;
      ++j;
    }
  }
  return dot;
}

}  // namespace crossling
