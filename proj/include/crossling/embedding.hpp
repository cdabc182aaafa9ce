#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crossling/corpus.hpp"

namespace crossling {

/// Dense word vectors (one row per word) with the context-side feature
/// vectors retained for diagnostics. Rows follow vocabulary index order of
/// the matrix the embedding was trained on.
struct EmbeddingMatrix {
  std::uint32_t dim = 0;
  std::vector<LangWord> words;      // row -> word
  std::vector<double> word_vecs;    // row-major, words.size() x dim
  std::vector<double> feature_vecs; // row-major, n_features x dim

  // Diagnostics: per-epoch mean loss (SGNS) or singular values (SVD).
  std::vector<double> epoch_loss;
  std::vector<double> singular_values;

  std::size_t num_words() const { return words.size(); }
  std::size_t num_features() const { return dim ? feature_vecs.size() / dim : 0; }

  std::span<const double> word_vector(std::size_t row) const {
    return {word_vecs.data() + row * dim, dim};
  }
  std::span<double> word_vector(std::size_t row) {
    return {word_vecs.data() + row * dim, dim};
  }
  std::span<const double> feature_vector(std::size_t row) const {
    return {feature_vecs.data() + row * dim, dim};
  }

  std::optional<std::size_t> find(std::string_view lang, std::string_view surface) const;
  void rebuild_index();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

/// Cosine of two equal-length vectors, in [-1, 1]. Throws on a zero vector.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace crossling
