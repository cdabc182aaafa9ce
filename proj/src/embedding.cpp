#include "crossling/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace crossling {

std::optional<std::size_t> EmbeddingMatrix::find(std::string_view lang,
                                                 std::string_view surface) const {
  std::string key;
  key.reserve(lang.size() + surface.size() + 1);
  key.append(lang);
  key.push_back(':');
  key.append(surface);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingMatrix::rebuild_index() {
  index_.clear();
  index_.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i].str(), i);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cosine: zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

}  // namespace crossling
