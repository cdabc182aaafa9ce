#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crossling/corpus.hpp"

namespace crossling {

/// Word-row by feature-column sparse matrix in CSR form. Column indices are
/// strictly increasing within each row and no explicit zeros are stored.
/// row_sums / col_sums / total always describe the *raw* (pre-transform)
/// matrix; transforms carry them forward unchanged so that downstream
/// consumers (PMI, negative sampling) see the original marginals.
struct SparseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_ptr;   // n_rows + 1
  std::vector<std::uint32_t> col_idx; // nnz
  std::vector<double> values;         // nnz

  std::vector<double> row_sums; // raw marginals, size n_rows
  std::vector<double> col_sums; // raw marginals, size n_cols
  double total = 0.0;

  /// Row index -> vocabulary index (set by build_indicator_matrix; empty for
  /// matrices without word provenance).
  std::vector<std::uint32_t> row_words;

  std::size_t nnz() const { return col_idx.size(); }
  std::span<const std::uint32_t> row_cols(std::size_t r) const {
    return {col_idx.data() + row_ptr[r], col_idx.data() + row_ptr[r + 1]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values.data() + row_ptr[r], values.data() + row_ptr[r + 1]};
  }
  /// Recomputes row_sums/col_sums/total from the stored cells.
  void compute_marginals();
};

enum class Granularity { sentence, document };
enum class CellSemantics { indicator, count };

/// Builds the word x feature matrix over the selected languages. Rows are
/// the vocabulary entries whose language is in `languages`, in vocabulary
/// index order (row_words records the mapping). With Granularity::sentence,
/// columns are sentence IDs; with Granularity::document, `doc_keys` must
/// supply one document key per sentence ID and columns are the sorted
/// distinct keys. Indicator semantics store 1 for any word present in a
/// feature; count semantics store occurrence counts.
SparseMatrix build_indicator_matrix(
    const ParallelCorpus& corpus, const Vocabulary& vocab,
    const std::vector<std::string>& languages,
    Granularity granularity = Granularity::sentence,
    const std::vector<std::string>& doc_keys = {},
    CellSemantics semantics = CellSemantics::indicator);

/// L1 row normalization: cell / raw row sum. Output rows sum to 1.
SparseMatrix transform_l1(const SparseMatrix& m);

/// Inverse document frequency: occupied cells become log(n_cols / I(w,*)),
/// constant across each row. Natural log. Cells that map to exactly zero
/// (words present in every feature) are pruned from storage.
SparseMatrix transform_idf(const SparseMatrix& m);

/// Pointwise mutual information over occupied cells,
/// log(cell * total / (row_sum * col_sum)); unoccupied cells stay implicit
/// zeros. With positive=true, negative values are dropped. Exact zeros are
/// pruned from storage either way.
SparseMatrix transform_pmi(const SparseMatrix& m, bool positive);

}  // namespace crossling
