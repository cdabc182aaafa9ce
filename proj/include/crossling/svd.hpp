#pragma once

#include <cstdint>

#include "crossling/embedding.hpp"
#include "crossling/matrix.hpp"

namespace crossling {

/// Truncated rank-d SVD of a transformed word/feature matrix (IDF or
/// positive PMI) by randomized subspace iteration (oversampling 10, 7 power
/// iterations). Word vectors are U_d * sqrt(S_d) and feature vectors
/// V_d * sqrt(S_d) -- the symmetric weighting. Singular values are returned
/// in non-increasing order in the diagnostics field.
EmbeddingMatrix train_inverted_index(const SparseMatrix& m, const Vocabulary& vocab,
                                     std::uint32_t dim, std::uint64_t seed = 1);

}  // namespace crossling
