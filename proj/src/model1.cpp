#include "crossling/model1.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace crossling {

double TranslationTable::prob(std::uint32_t ws, std::uint32_t wt) const {
  if (ws >= rows.size()) return 0.0;
  const auto& row = rows[ws];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(wt, 0.0));
  return (it != row.end() && it->first == wt) ? it->second : 0.0;
}

double model1_similarity(std::uint32_t ws, std::uint32_t wt, const TranslationTable& table) {
  return table.prob(ws, wt);
}

namespace {

struct SentencePair {
  std::vector<std::uint32_t> src;  // local source-word ids
  std::vector<std::uint32_t> tgt;  // target vocabulary indices
};

}  // namespace

TranslationTable train_model1(
    const ParallelCorpus& corpus, const Vocabulary& vocab, const std::string& src_lang,
    const std::string& tgt_lang, unsigned iterations, bool use_null, unsigned threads,
    const std::function<void(unsigned, const TranslationTable&)>& on_iteration) {
  if (iterations == 0) throw std::invalid_argument("iterations must be positive");
  if (threads == 0) threads = 1;
  if (src_lang == tgt_lang)
    throw std::invalid_argument("source and target language must differ");
  auto src_li = corpus.language_index(src_lang);
  auto tgt_li = corpus.language_index(tgt_lang);
  if (!src_li || !tgt_li)
    throw std::invalid_argument("language not in corpus: " +
                                (src_li ? tgt_lang : src_lang));

  bool any_overlap = false;
  for (std::size_t si = 0; si < corpus.num_sentences() && !any_overlap; ++si)
    any_overlap = corpus.present(*src_li, si) && corpus.present(*tgt_li, si);
  if (!any_overlap)
    throw std::invalid_argument("no sentences where both languages are present");

  // Collect usable sentence pairs with tokens mapped to vocabulary indices;
  // out-of-vocabulary tokens are dropped.
  auto lookup = vocab.token_lookup(corpus);
  std::vector<std::uint32_t> src_local(vocab.size(), Vocabulary::npos);
  std::vector<std::uint32_t> src_words;  // local id -> vocab index
  std::vector<SentencePair> pairs;
  for (std::size_t si = 0; si < corpus.num_sentences(); ++si) {
    if (!corpus.present(*src_li, si) || !corpus.present(*tgt_li, si)) continue;
    SentencePair pair;
    for (std::uint32_t tid : corpus.tokens(*src_li, si)) {
      std::uint32_t vi = lookup[*src_li][tid];
      if (vi == Vocabulary::npos) continue;
      if (src_local[vi] == Vocabulary::npos) {
        src_local[vi] = static_cast<std::uint32_t>(src_words.size());
        src_words.push_back(vi);
      }
      pair.src.push_back(src_local[vi]);
    }
    for (std::uint32_t tid : corpus.tokens(*tgt_li, si)) {
      std::uint32_t vi = lookup[*tgt_li][tid];
      if (vi != Vocabulary::npos) pair.tgt.push_back(vi);
    }
    if (!pair.src.empty() && !pair.tgt.empty()) pairs.push_back(std::move(pair));
  }
  if (pairs.empty())
    throw std::invalid_argument("no sentence pairs with in-vocabulary tokens");

  // Support: each source word's co-occurring target words, plus every
  // observed target word for the NULL row.
  std::size_t n_src = src_words.size();
  std::vector<std::vector<std::uint32_t>> targets(n_src + 1);
  const std::uint32_t null_id = static_cast<std::uint32_t>(n_src);
  for (const auto& pair : pairs) {
    for (std::uint32_t s : pair.src)
      targets[s].insert(targets[s].end(), pair.tgt.begin(), pair.tgt.end());
    if (use_null)
      targets[null_id].insert(targets[null_id].end(), pair.tgt.begin(), pair.tgt.end());
  }
  for (auto& t : targets) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    t.shrink_to_fit();
  }

  std::vector<std::vector<double>> probs(n_src + 1);
  for (std::size_t s = 0; s <= n_src; ++s)
    probs[s].assign(targets[s].size(),
                    targets[s].empty() ? 0.0 : 1.0 / static_cast<double>(targets[s].size()));

  auto target_slot = [&](std::uint32_t s, std::uint32_t wt) {
    const auto& t = targets[s];
    return static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), wt) - t.begin());
  };

  TranslationTable table;
  table.src_lang = src_lang;
  table.tgt_lang = tgt_lang;
  table.has_null = use_null;

  auto export_table = [&] {
    table.rows.assign(vocab.size(), {});
    for (std::size_t s = 0; s < n_src; ++s) {
      auto& row = table.rows[src_words[s]];
      row.reserve(targets[s].size());
      for (std::size_t k = 0; k < targets[s].size(); ++k)
        row.emplace_back(targets[s][k], probs[s][k]);
    }
    table.null_row.clear();
    if (use_null)
      for (std::size_t k = 0; k < targets[null_id].size(); ++k)
        table.null_row.emplace_back(targets[null_id][k], probs[null_id][k]);
  };

  threads = std::min<unsigned>(threads, static_cast<unsigned>(pairs.size()));
  for (unsigned iter = 0; iter < iterations; ++iter) {
    std::vector<std::vector<std::vector<double>>> counts(threads);
    std::vector<double> lls(threads, 0.0);

    auto worker = [&](unsigned wi, std::size_t begin, std::size_t end) {
      auto& c = counts[wi];
      c.resize(n_src + 1);
      for (std::size_t s = 0; s <= n_src; ++s) c[s].assign(targets[s].size(), 0.0);
      std::vector<std::size_t> slots;
      double ll = 0.0;
      for (std::size_t pi = begin; pi < end; ++pi) {
        const auto& pair = pairs[pi];
        double log_uniform =
            -std::log(static_cast<double>(pair.src.size() + (use_null ? 1 : 0)));
        for (std::uint32_t wt : pair.tgt) {
          slots.resize(pair.src.size());
          double denom = 0.0;
          for (std::size_t i = 0; i < pair.src.size(); ++i) {
            slots[i] = target_slot(pair.src[i], wt);
            denom += probs[pair.src[i]][slots[i]];
          }
          std::size_t null_slot = 0;
          if (use_null) {
            null_slot = target_slot(null_id, wt);
            denom += probs[null_id][null_slot];
          }
          ll += std::log(denom) + log_uniform;
          for (std::size_t i = 0; i < pair.src.size(); ++i)
            c[pair.src[i]][slots[i]] += probs[pair.src[i]][slots[i]] / denom;
          if (use_null) c[null_id][null_slot] += probs[null_id][null_slot] / denom;
        }
      }
      lls[wi] = ll;
    };

    if (threads == 1) {
      worker(0, 0, pairs.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (pairs.size() + threads - 1) / threads;
      for (unsigned wi = 0; wi < threads; ++wi) {
        std::size_t begin = wi * chunk;
        std::size_t end = std::min(pairs.size(), begin + chunk);
        pool.emplace_back(worker, wi, begin, end);
      }
      for (auto& t : pool) t.join();
    }

    double ll = 0.0;
    for (unsigned wi = 0; wi < threads; ++wi) ll += lls[wi];
    table.log_likelihood.push_back(ll);

    // Merge worker counts in worker order, then renormalize rows.
    auto& merged = counts[0];
    for (unsigned wi = 1; wi < threads; ++wi)
      for (std::size_t s = 0; s <= n_src; ++s)
        for (std::size_t k = 0; k < merged[s].size(); ++k)
          merged[s][k] += counts[wi][s][k];
    for (std::size_t s = 0; s <= n_src; ++s) {
      double sum = 0.0;
      for (double v : merged[s]) sum += v;
      if (sum > 0.0)
        for (std::size_t k = 0; k < merged[s].size(); ++k) probs[s][k] = merged[s][k] / sum;
    }

    if (on_iteration) {
      export_table();
      on_iteration(iter, table);
    }
  }

  export_table();
  return table;
}

}  // namespace crossling
