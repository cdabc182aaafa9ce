#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crossling/dice.hpp"
#include "crossling/embedding.hpp"
#include "crossling/model1.hpp"

namespace crossling {

/// A direction-specific cross-lingual scorer over word surfaces. Scores are
/// only requested for in-vocabulary pairs; callers consult knows_source /
/// knows_target first and apply the out-of-vocabulary policy themselves.
class SimilarityFunction {
 public:
  virtual ~SimilarityFunction() = default;
  virtual bool knows_source(std::string_view surface) const = 0;
  virtual bool knows_target(std::string_view surface) const = 0;
  virtual double score(std::string_view src_surface, std::string_view tgt_surface) const = 0;
};

/// Cosine over word vectors from a trained embedding.
class CosineScorer : public SimilarityFunction {
 public:
  CosineScorer(const EmbeddingMatrix& emb, std::string src_lang, std::string tgt_lang);
  bool knows_source(std::string_view surface) const override;
  bool knows_target(std::string_view surface) const override;
  double score(std::string_view src, std::string_view tgt) const override;

 private:
  const EmbeddingMatrix& emb_;
  std::string src_lang_, tgt_lang_;
  std::vector<double> norms_;
};

/// Dice over sentence co-occurrence counts.
class DiceScorer : public SimilarityFunction {
 public:
  DiceScorer(const CooccurrenceStats& stats, const Vocabulary& vocab,
             DiceDenominator denom = DiceDenominator::product);
  bool knows_source(std::string_view surface) const override;
  bool knows_target(std::string_view surface) const override;
  double score(std::string_view src, std::string_view tgt) const override;

 private:
  const CooccurrenceStats& stats_;
  const Vocabulary& vocab_;
  DiceDenominator denom_;
};

/// Model-1 translation probabilities t(target | source).
class Model1Scorer : public SimilarityFunction {
 public:
  Model1Scorer(const TranslationTable& table, const Vocabulary& vocab);
  bool knows_source(std::string_view surface) const override;
  bool knows_target(std::string_view surface) const override;
  double score(std::string_view src, std::string_view tgt) const override;

 private:
  const TranslationTable& table_;
  const Vocabulary& vocab_;
  std::set<std::uint32_t> target_words_;
};

using AlignmentLinks = std::set<std::pair<std::uint32_t, std::uint32_t>>;  // 1-based

/// Greedy decoding: each in-vocabulary source word links to its most
/// similar in-vocabulary target word (ties to the lowest target position).
/// Out-of-vocabulary source words are left unaligned; out-of-vocabulary
/// target words are never selected while an in-vocabulary candidate exists.
AlignmentLinks greedy_align(const std::vector<std::string>& src_tokens,
                            const std::vector<std::string>& tgt_tokens,
                            const SimilarityFunction& sim);

/// Manually annotated links for scored sentence pairs: sure links S and
/// possible links P with S contained in P (enforced at load).
struct GoldAlignment {
  struct Links {
    AlignmentLinks sure, possible;
  };
  std::map<std::uint32_t, Links> sentences;  // keyed by sentence ID
};

/// Parses lines `sentID srcPos tgtPos flag` with flag in {S, P}; positions
/// and sentence IDs are 1-based. Sure links are added to P when absent.
GoldAlignment load_gold_alignment(const std::string& path);

struct AerResult {
  double aer = 0.0;
  double one_minus_aer = 1.0;
  std::uint64_t predicted = 0, sure = 0, hit_sure = 0, hit_possible = 0;
};

/// Corpus-level AER = 1 - (|A ^ S| + |A ^ P|) / (|A| + |S|) over global
/// sums. Gold sentence IDs must all appear in `predicted` (sentences
/// without gold links may simply be absent from the gold side). An empty
/// denominator yields AER 0.
AerResult compute_aer(const std::map<std::uint32_t, AlignmentLinks>& predicted,
                      const GoldAlignment& gold);

struct BilingualDictionary {
  std::vector<std::pair<std::string, std::string>> entries;  // source, target surfaces
  std::size_t dropped_multi_token = 0;
  std::size_t dropped_duplicates = 0;
};

/// Reads a UTF-8 TSV `source<TAB>target`. Entries pass through tokenize();
/// entries that do not reduce to a single token per side are dropped and
/// counted, as are duplicate pairs.
BilingualDictionary load_dictionary(const std::string& path);

struct PAt1Result {
  double p_at_1 = 0.0;
  double coverage = 0.0;
  std::size_t scored_pairs = 0, total_pairs = 0;
};

/// Pair-level precision-at-one: each (s, t) pair with in-vocabulary s
/// scores 1 iff argmax over target_vocab of sim(s, .) equals t (ties to the
/// lowest index). Pairs with out-of-vocabulary source are excluded from the
/// denominator and reported through coverage. With any_of=true, grouping is
/// by source word and a prediction matching any listed translation counts.
PAt1Result induce_p_at_1(const SimilarityFunction& sim, const BilingualDictionary& dict,
                         const std::vector<std::string>& target_vocab, bool any_of = false);

}  // namespace crossling
