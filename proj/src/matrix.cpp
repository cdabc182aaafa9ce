#include "crossling/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crossling {

void SparseMatrix::compute_marginals() {
  row_sums.assign(n_rows, 0.0);
  col_sums.assign(n_cols, 0.0);
  total = 0.0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      row_sums[r] += values[k];
      col_sums[col_idx[k]] += values[k];
      total += values[k];
    }
  }
}

SparseMatrix build_indicator_matrix(const ParallelCorpus& corpus, const Vocabulary& vocab,
                                    const std::vector<std::string>& languages,
                                    Granularity granularity,
                                    const std::vector<std::string>& doc_keys,
                                    CellSemantics semantics) {
  if (languages.empty()) throw std::invalid_argument("empty language subset");
  std::vector<std::size_t> lang_indices;
  for (const auto& lang : languages) {
    auto li = corpus.language_index(lang);
    if (!li) throw std::invalid_argument("language not in corpus: " + lang);
    lang_indices.push_back(*li);
  }

  // Map sentence IDs to columns. Sentence granularity is the identity;
  // document granularity maps each sentence to its key's index in the
  // sorted distinct key list.
  std::size_t n_cols = corpus.num_sentences();
  std::vector<std::uint32_t> sent_to_col;
  if (granularity == Granularity::document) {
    if (doc_keys.size() != corpus.num_sentences())
      throw std::invalid_argument("need one document key per sentence ID");
    std::map<std::string, std::uint32_t> key_ids;
    for (const auto& key : doc_keys) key_ids.emplace(key, 0);
    std::uint32_t next = 0;
    for (auto& [key, id] : key_ids) id = next++;
    sent_to_col.reserve(doc_keys.size());
    for (const auto& key : doc_keys) sent_to_col.push_back(key_ids.at(key));
    n_cols = key_ids.size();
  }

  SparseMatrix m;
  m.n_cols = n_cols;
  for (std::uint32_t vi = 0; vi < vocab.size(); ++vi) {
    const auto& lang = vocab.word(vi).lang;
    if (std::find(languages.begin(), languages.end(), lang) != languages.end())
      m.row_words.push_back(vi);
  }
  m.n_rows = m.row_words.size();

  std::vector<std::uint32_t> vocab_to_row(vocab.size(), Vocabulary::npos);
  for (std::uint32_t r = 0; r < m.row_words.size(); ++r) vocab_to_row[m.row_words[r]] = r;

  auto lookup = vocab.token_lookup(corpus);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(m.n_rows);
  for (std::size_t si = 0; si < corpus.num_sentences(); ++si) {
    std::uint32_t col = granularity == Granularity::document
                            ? sent_to_col[si]
                            : static_cast<std::uint32_t>(si);
    for (std::size_t li : lang_indices) {
      if (!corpus.present(li, si)) continue;
      for (std::uint32_t tid : corpus.tokens(li, si)) {
        std::uint32_t vi = lookup[li][tid];
        if (vi == Vocabulary::npos) continue;
        auto& cells = rows[vocab_to_row[vi]];
        if (!cells.empty() && cells.back().first == col) {
          if (semantics == CellSemantics::count) cells.back().second += 1.0;
        } else {
          cells.emplace_back(col, 1.0);
        }
      }
    }
  }

  // Document granularity can touch the same column from non-adjacent
  // sentences; merge duplicates after sorting.
  if (granularity == Granularity::document) {
    for (auto& cells : rows) {
      std::sort(cells.begin(), cells.end());
      std::vector<std::pair<std::uint32_t, double>> merged;
      for (const auto& [col, v] : cells) {
        if (!merged.empty() && merged.back().first == col) {
          if (semantics == CellSemantics::count)
            merged.back().second += v;
        } else {
          merged.emplace_back(col, v);
        }
      }
      cells = std::move(merged);
    }
  }

  m.row_ptr.resize(m.n_rows + 1, 0);
  for (std::size_t r = 0; r < m.n_rows; ++r) m.row_ptr[r + 1] = m.row_ptr[r] + rows[r].size();
  m.col_idx.reserve(m.row_ptr.back());
  m.values.reserve(m.row_ptr.back());
  for (const auto& cells : rows) {
    for (const auto& [col, v] : cells) {
      m.col_idx.push_back(col);
      m.values.push_back(v);
    }
  }
  m.compute_marginals();
  return m;
}

namespace {

SparseMatrix copy_structure(const SparseMatrix& m) {
  SparseMatrix out;
  out.n_rows = m.n_rows;
  out.n_cols = m.n_cols;
  out.row_sums = m.row_sums;
  out.col_sums = m.col_sums;
  out.total = m.total;
  out.row_words = m.row_words;
  return out;
}

}  // namespace

SparseMatrix transform_l1(const SparseMatrix& m) {
  SparseMatrix out = copy_structure(m);
  out.row_ptr = m.row_ptr;
  out.col_idx = m.col_idx;
  out.values.resize(m.values.size());
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    double sum = m.row_sums[r];
    if (sum <= 0.0)
      throw std::invalid_argument("transform_l1: zero row " + std::to_string(r));
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
      out.values[k] = m.values[k] / sum;
  }
  return out;
}

SparseMatrix transform_idf(const SparseMatrix& m) {
  SparseMatrix out = copy_structure(m);
  out.row_ptr.resize(m.n_rows + 1, 0);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    out.row_ptr[r] = out.col_idx.size();
    if (m.row_sums[r] <= 0.0)
      throw std::invalid_argument("transform_idf: zero row " + std::to_string(r));
    double idf = std::log(static_cast<double>(m.n_cols) / m.row_sums[r]);
    if (idf != 0.0) {
      for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
        out.col_idx.push_back(m.col_idx[k]);
        out.values.push_back(idf);
      }
    }
  }
  out.row_ptr[m.n_rows] = out.col_idx.size();
  return out;
}

SparseMatrix transform_pmi(const SparseMatrix& m, bool positive) {
  if (m.total <= 0.0) throw std::invalid_argument("transform_pmi: empty matrix");
  SparseMatrix out = copy_structure(m);
  out.row_ptr.resize(m.n_rows + 1, 0);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    out.row_ptr[r] = out.col_idx.size();
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
      double rs = m.row_sums[r];
      double cs = m.col_sums[m.col_idx[k]];
      if (rs <= 0.0 || cs <= 0.0)
        throw std::invalid_argument("transform_pmi: zero marginal");
      double pmi = std::log(m.values[k] * m.total / (rs * cs));
      if (pmi == 0.0) continue;
      if (positive && pmi < 0.0) continue;
      out.col_idx.push_back(m.col_idx[k]);
      out.values.push_back(pmi);
    }
  }
  out.row_ptr[m.n_rows] = out.col_idx.size();
  return out;
}

}  // namespace crossling
