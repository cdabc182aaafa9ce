#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "crossling/matrix.hpp"

namespace crossling {

/// Sentence co-occurrence counts S(ws, wt) for one language pair, derived
/// from an indicator matrix built over exactly those two languages. Rows of
/// S are materialized lazily per source word (sparse row intersection) and
/// cached; queries are thread-safe.
class CooccurrenceStats {
 public:
  CooccurrenceStats(const SparseMatrix& indicator, const Vocabulary& vocab,
                    const std::string& src_lang, const std::string& tgt_lang);

  const std::string& src_lang() const { return src_lang_; }
  const std::string& tgt_lang() const { return tgt_lang_; }

  /// S(ws, wt): number of aligned sentences containing both words.
  /// Arguments are vocabulary indices; words of the wrong language yield 0.
  std::uint32_t pair_count(std::uint32_t ws, std::uint32_t wt) const;

  /// S(ws, *) and S(*, wt): number of sentences containing the word.
  std::uint32_t src_marginal(std::uint32_t ws) const;
  std::uint32_t tgt_marginal(std::uint32_t wt) const;

  bool has_src(std::uint32_t vocab_index) const {
    return vocab_index < src_sentences_.size() && !src_sentences_[vocab_index].empty();
  }
  bool has_tgt(std::uint32_t vocab_index) const {
    return vocab_index < tgt_marginals_.size() && tgt_marginals_[vocab_index] > 0;
  }

  /// All (wt, S(ws, wt)) pairs for a source word, sorted by wt.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& row(std::uint32_t ws) const;

 private:
  std::string src_lang_, tgt_lang_;
  // Indexed by vocabulary index; empty for words of the other language.
  std::vector<std::vector<std::uint32_t>> src_sentences_;  // sorted sentence IDs
  std::vector<std::uint32_t> src_marginals_;
  std::vector<std::uint32_t> tgt_marginals_;
  // Sentence ID -> target-language vocabulary indices present in it.
  std::vector<std::vector<std::uint32_t>> col_targets_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint32_t,
                             std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      row_cache_;
};

enum class DiceDenominator {
  product,  // 2 S(ws,wt) / (S(ws,*) * S(*,wt))
  sum       // 2 S(ws,wt) / (S(ws,*) + S(*,wt)), the classical coefficient
};

/// Dice similarity of a source/target vocabulary-index pair. The default
/// product denominator is what the dot-product equivalence requires.
double dice_similarity(std::uint32_t ws, std::uint32_t wt, const CooccurrenceStats& stats,
                       DiceDenominator denom = DiceDenominator::product);

/// Sparse dot product of two L1-normalized indicator rows; equals
/// dice_similarity(ws, wt) / 2 exactly for the product denominator.
/// `l1` must be transform_l1 of the indicator matrix the stats came from;
/// ws/wt are vocabulary indices resolved through l1.row_words.
double dice_via_dot(std::uint32_t ws, std::uint32_t wt, const SparseMatrix& l1);

}  // namespace crossling
