#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crossling/corpus.hpp"

namespace crossling {

/// Row-stochastic conditional translation probabilities t(target | source)
/// for one direction. Rows are indexed by source-word vocabulary index and
/// only carry entries for target words that co-occur with the source word
/// in at least one aligned sentence; the NULL source word has its own row.
struct TranslationTable {
  std::string src_lang, tgt_lang;
  bool has_null = false;

  // rows[vocab index] = sorted (target vocab index, probability) pairs;
  // empty for words that are not source-language or never co-occur.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
  std::vector<std::pair<std::uint32_t, double>> null_row;

  /// Corpus log-likelihood under the parameters entering each EM pass.
  std::vector<double> log_likelihood;

  /// t(wt | ws); 0 when the pair is unsupported.
  double prob(std::uint32_t ws, std::uint32_t wt) const;
  bool has_source(std::uint32_t ws) const {
    return ws < rows.size() && !rows[ws].empty();
  }
};

/// IBM Model-1 expectation maximization over the sentence pairs where both
/// languages are present. Initialization is uniform over each source word's
/// co-occurring target words; each pass accumulates expected counts and
/// renormalizes. Runs exactly `iterations` passes. `on_iteration`, when
/// set, is called after every M-step with the pass index and the table so
/// far. `threads` splits the E-step over sentence ranges with a fixed-order
/// reduction (deterministic for a given thread count).
TranslationTable train_model1(
    const ParallelCorpus& corpus, const Vocabulary& vocab, const std::string& src_lang,
    const std::string& tgt_lang, unsigned iterations, bool use_null = true,
    unsigned threads = 1,
    const std::function<void(unsigned, const TranslationTable&)>& on_iteration = {});

/// The cross-lingual similarity function: t(wt | ws) looked up in a table
/// trained with direction (ws language, wt language).
double model1_similarity(std::uint32_t ws, std::uint32_t wt, const TranslationTable& table);

}  // namespace crossling
