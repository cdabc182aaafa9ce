#include "crossling/svd.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

namespace crossling {

namespace {

constexpr std::uint32_t kOversampling = 10;
constexpr int kPowerIterations = 7;

// Polar Box-Muller on the raw mt19937_64 stream; avoids the
// implementation-defined std::normal_distribution.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    have_spare_ = true;
    return u * scale;
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Y = A * X for CSR A.
Eigen::MatrixXd sparse_times_dense(const SparseMatrix& a, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.n_rows), x.cols());
  for (std::size_t r = 0; r < a.n_rows; ++r)
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
      y.row(static_cast<Eigen::Index>(r)) += a.values[k] * x.row(a.col_idx[k]);
  return y;
}

// Y = A^T * X for CSR A.
Eigen::MatrixXd sparse_transpose_times_dense(const SparseMatrix& a, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.n_cols), x.cols());
  for (std::size_t r = 0; r < a.n_rows; ++r)
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
      y.row(a.col_idx[k]) += a.values[k] * x.row(static_cast<Eigen::Index>(r));
  return y;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
  return q;
}

}  // namespace

EmbeddingMatrix train_inverted_index(const SparseMatrix& m, const Vocabulary& vocab,
                                     std::uint32_t dim, std::uint64_t seed) {
  if (m.nnz() == 0) throw std::invalid_argument("empty matrix");
  std::size_t min_dim = std::min(m.n_rows, m.n_cols);
  if (dim < 1 || dim > min_dim)
    throw std::invalid_argument("dim must be in [1, min(n_rows, n_cols)]");

  const auto sketch = static_cast<Eigen::Index>(
      std::min<std::size_t>(dim + kOversampling, min_dim));

  Eigen::MatrixXd omega(static_cast<Eigen::Index>(m.n_cols), sketch);
  GaussianSource gauss(seed);
  for (Eigen::Index i = 0; i < omega.rows(); ++i)
    for (Eigen::Index j = 0; j < omega.cols(); ++j) omega(i, j) = gauss.next();

  // Subspace iteration on (A A^T)^q A Omega with QR stabilization.
  Eigen::MatrixXd q = orthonormalize(sparse_times_dense(m, omega));
  for (int it = 0; it < kPowerIterations; ++it) {
    Eigen::MatrixXd z = orthonormalize(sparse_transpose_times_dense(m, q));
    q = orthonormalize(sparse_times_dense(m, z));
  }

  // Project: B = Q^T A, then a small dense SVD of B^T (n_cols x sketch).
  Eigen::MatrixXd bt = sparse_transpose_times_dense(m, q);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // bt = V * S * W^T with A ~ Q * B, so U = Q * W and the right factor is V.

  EmbeddingMatrix emb;
  emb.dim = dim;
  emb.words.reserve(m.row_words.size());
  for (std::uint32_t vi : m.row_words) emb.words.push_back(vocab.word(vi));

  Eigen::MatrixXd u = q * svd.matrixV();
  const Eigen::MatrixXd& v = svd.matrixU();
  emb.singular_values.resize(dim);
  emb.word_vecs.resize(m.n_rows * static_cast<std::size_t>(dim));
  emb.feature_vecs.resize(m.n_cols * static_cast<std::size_t>(dim));
  for (std::uint32_t j = 0; j < dim; ++j) {
    double sigma = svd.singularValues()(j);
    emb.singular_values[j] = sigma;
    double w = std::sqrt(sigma);
    for (std::size_t r = 0; r < m.n_rows; ++r)
      emb.word_vecs[r * dim + j] = u(static_cast<Eigen::Index>(r), j) * w;
    for (std::size_t c = 0; c < m.n_cols; ++c)
      emb.feature_vecs[c * dim + j] = v(static_cast<Eigen::Index>(c), j) * w;
  }
  emb.rebuild_index();
  return emb;
}

}  // namespace crossling
