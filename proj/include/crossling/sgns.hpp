#pragma once

#include <cstdint>

#include "crossling/embedding.hpp"
#include "crossling/matrix.hpp"

namespace crossling {

struct SgnsConfig {
  std::uint32_t dim = 500;
  std::uint32_t epochs = 100;
  std::uint32_t negatives = 5;
  double alpha = 0.75;          // context distribution smoothing exponent
  double learning_rate = 0.025; // initial; decays linearly to ~0
  std::uint64_t seed = 1;
  std::uint32_t threads = 1;    // > 1 enables lock-free parallel updates

  void validate() const;
};

enum class TrainingMode { bilingual, multilingual };

/// Negative-sampling factorization of the word/sentence-ID indicator
/// matrix. Every positive cell contributes exactly one training pair per
/// epoch, visited in shuffled order; negatives are sentence IDs drawn from
/// the smoothed column distribution P(f) proportional to col_sums[f]^alpha
/// (a draw equal to the positive column is redrawn). Bilingual mode
/// requires the matrix to span exactly 2 languages, multilingual >= 2; the
/// training stream is otherwise identical. Single-threaded runs are
/// deterministic for a fixed seed; threads > 1 applies unsynchronized
/// updates and is not.
EmbeddingMatrix train_sid_sgns(const SparseMatrix& m, const Vocabulary& vocab,
                               const SgnsConfig& config, TrainingMode mode);

/// Draws `n` samples from the smoothed column distribution; exposed for
/// distribution tests.
std::vector<std::uint32_t> sample_negative_columns(const SparseMatrix& m, double alpha,
                                                   std::size_t n, std::uint64_t seed);

}  // namespace crossling
