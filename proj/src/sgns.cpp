#include "crossling/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace crossling {

namespace {

// Distribution transforms are hand-rolled on top of the (fully specified)
// mt19937_64 stream so that results do not depend on the standard library's
// implementation-defined <random> distributions.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void fisher_yates(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[bounded(rng, i)]);
}

// Vose alias method; sampling is O(1) and exact.
class AliasSampler {
 public:
  explicit AliasSampler(const std::vector<double>& weights)
      : prob_(weights.size()), alias_(weights.size()) {
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("negative sampling weight");
      sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("all sampling weights are zero");
    std::size_t n = weights.size();
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / sum;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back(), l = large.back();
      small.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::uint32_t i : large) prob_[i] = 1.0;
    for (std::uint32_t i : small) prob_[i] = 1.0;  // numerical leftovers
  }

  std::uint32_t sample(std::mt19937_64& rng) const {
    auto j = static_cast<std::uint32_t>(bounded(rng, prob_.size()));
    return unit_uniform(rng) < prob_[j] ? j : alias_[j];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

struct TrainContext {
  double* word_vecs;
  double* feature_vecs;
  std::uint32_t dim;
  std::uint32_t negatives;
  const AliasSampler* sampler;
  std::size_t support;  // columns with positive sampling weight
};

// One positive cell: a sigmoid step against the feature vector plus k
// sampled negatives. Returns the pre-update loss contribution.
double train_pair(const TrainContext& ctx, std::uint32_t word, std::uint32_t col, double lr,
                  std::mt19937_64& rng, std::vector<double>& grad_w) {
  double* wrow = ctx.word_vecs + static_cast<std::size_t>(word) * ctx.dim;
  grad_w.assign(ctx.dim, 0.0);
  double loss = 0.0;
  for (std::uint32_t t = 0; t <= ctx.negatives; ++t) {
    std::uint32_t target;
    double label;
    if (t == 0) {
      target = col;
      label = 1.0;
    } else {
      if (ctx.support <= 1) break;
      do {
        target = ctx.sampler->sample(rng);
      } while (target == col);
      label = 0.0;
    }
    double* frow = ctx.feature_vecs + static_cast<std::size_t>(target) * ctx.dim;
    double x = 0.0;
    for (std::uint32_t k = 0; k < ctx.dim; ++k) x += wrow[k] * frow[k];
    loss += label != 0.0 ? softplus(-x) : softplus(x);
    double sig = 1.0 / (1.0 + std::exp(-x));
    double g = (label - sig) * lr;
    for (std::uint32_t k = 0; k < ctx.dim; ++k) {
      grad_w[k] += g * frow[k];
      frow[k] += g * wrow[k];
    }
  }
  for (std::uint32_t k = 0; k < ctx.dim; ++k) wrow[k] += grad_w[k];
  return loss;
}

}  // namespace

void SgnsConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (negatives < 1) throw std::invalid_argument("negatives must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
}

std::vector<std::uint32_t> sample_negative_columns(const SparseMatrix& m, double alpha,
                                                   std::size_t n, std::uint64_t seed) {
  std::vector<double> weights(m.n_cols);
  for (std::size_t c = 0; c < m.n_cols; ++c) weights[c] = std::pow(m.col_sums[c], alpha);
  AliasSampler sampler(weights);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> draws(n);
  for (auto& d : draws) d = sampler.sample(rng);
  return draws;
}

EmbeddingMatrix train_sid_sgns(const SparseMatrix& m, const Vocabulary& vocab,
                               const SgnsConfig& config, TrainingMode mode) {
  config.validate();
  if (m.nnz() == 0) throw std::invalid_argument("empty matrix");
  if (m.row_words.size() != m.n_rows)
    throw std::invalid_argument("matrix lacks word provenance");
  std::set<std::string> langs;
  for (std::uint32_t vi : m.row_words) langs.insert(vocab.word(vi).lang);
  if (mode == TrainingMode::bilingual && langs.size() != 2)
    throw std::invalid_argument("bilingual mode requires a matrix over exactly 2 languages");
  if (langs.size() < 2)
    throw std::invalid_argument("need a matrix over at least 2 languages");

  const std::uint32_t d = config.dim;
  EmbeddingMatrix emb;
  emb.dim = d;
  emb.words.reserve(m.n_rows);
  for (std::uint32_t vi : m.row_words) emb.words.push_back(vocab.word(vi));
  emb.word_vecs.resize(m.n_rows * static_cast<std::size_t>(d));
  emb.feature_vecs.assign(m.n_cols * static_cast<std::size_t>(d), 0.0);

  std::mt19937_64 rng(config.seed);
  for (auto& v : emb.word_vecs) v = (unit_uniform(rng) - 0.5) / d;

  // Flatten the positive cells.
  std::size_t nnz = m.nnz();
  std::vector<std::uint32_t> pos_row(nnz);
  for (std::size_t r = 0; r < m.n_rows; ++r)
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
      pos_row[k] = static_cast<std::uint32_t>(r);
  const std::vector<std::uint32_t>& pos_col = m.col_idx;

  std::vector<double> weights(m.n_cols);
  std::size_t support = 0;
  for (std::size_t c = 0; c < m.n_cols; ++c) {
    weights[c] = std::pow(m.col_sums[c], config.alpha);
    if (weights[c] > 0.0) ++support;
  }
  AliasSampler sampler(weights);

  TrainContext ctx{emb.word_vecs.data(), emb.feature_vecs.data(), d,
                   config.negatives,     &sampler,                support};

  std::vector<std::uint32_t> order(nnz);
  for (std::size_t i = 0; i < nnz; ++i) order[i] = static_cast<std::uint32_t>(i);
  const double lr0 = config.learning_rate;
  const auto total_steps = static_cast<double>(config.epochs) * static_cast<double>(nnz);
  auto step_lr = [&](std::uint64_t step) {
    return lr0 * std::max(1.0 - static_cast<double>(step) / total_steps, 1e-4);
  };

  emb.epoch_loss.reserve(config.epochs);
  if (config.threads <= 1) {
    std::vector<double> grad_w;
    std::uint64_t step = 0;
    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
      fisher_yates(order, rng);
      double loss_sum = 0.0;
      for (std::uint32_t idx : order) {
        loss_sum += train_pair(ctx, pos_row[idx], pos_col[idx], step_lr(step), rng, grad_w);
        ++step;
      }
      emb.epoch_loss.push_back(loss_sum / static_cast<double>(nnz));
    }
  } else {
    // Parallel mode: workers update the shared vectors without
    // synchronization; lossy concurrent writes are tolerated by contract
    // and the result is not deterministic.
    unsigned threads = std::min<unsigned>(config.threads, std::max<std::size_t>(1, nnz));
    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
      fisher_yates(order, rng);
      std::vector<double> losses(threads, 0.0);
      std::vector<std::thread> pool;
      std::size_t chunk = (nnz + threads - 1) / threads;
      for (unsigned wi = 0; wi < threads; ++wi) {
        pool.emplace_back([&, wi] {
          std::mt19937_64 worker_rng(config.seed ^
                                     (0x9e3779b97f4a7c15ull *
                                      (static_cast<std::uint64_t>(epoch) * threads + wi + 1)));
          std::vector<double> grad_w;
          std::size_t begin = wi * chunk;
          std::size_t end = std::min(nnz, begin + chunk);
          double loss = 0.0;
          for (std::size_t i = begin; i < end; ++i) {
            std::uint32_t idx = order[i];
            loss += train_pair(ctx, pos_row[idx], pos_col[idx],
                               step_lr(static_cast<std::uint64_t>(epoch) * nnz + i),
                               worker_rng, grad_w);
          }
          losses[wi] = loss;
        });
      }
      for (auto& t : pool) t.join();
      double loss_sum = 0.0;
      for (double l : losses) loss_sum += l;
      emb.epoch_loss.push_back(loss_sum / static_cast<double>(nnz));
    }
  }

  for (double v : emb.word_vecs)
    if (!std::isfinite(v))
      throw std::runtime_error("training diverged: non-finite word vector");
  emb.rebuild_index();
  return emb;
}

}  // namespace crossling
