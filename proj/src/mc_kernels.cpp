#include "ristl/mc_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ristl/common.hpp"

namespace ristl::mc {

namespace {

// Uniform in (0,1]; never 0, so log() below is safe.
inline double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller pair.
inline void next_normal_pair(std::mt19937_64& rng, double& z0, double& z1) {
  double u1 = next_uniform(rng);
  double u2 = next_uniform(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

// Fills a row-major rows x width buffer with normals from one chunk stream.
// The Box-Muller pairing restarts on every row, so row r's values do not
// depend on width parity of earlier draws.
void fill_rows(double* p, std::size_t rows, std::size_t width, std::uint64_t chunk_seed) {
  std::mt19937_64 rng(chunk_seed);
  double z0, z1;
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = p + r * width;
    std::size_t i = 0;
    for (; i + 1 < width; i += 2) {
      next_normal_pair(rng, z0, z1);
      row[i] = z0;
      row[i + 1] = z1;
    }
    if (i < width) {
      next_normal_pair(rng, z0, z1);
      row[i] = z0;
    }
  }
}

void normal_fill_impl(std::span<double> out, std::uint64_t seed, bool parallel) {
  const std::size_t n = out.size();
  const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    std::size_t lo = static_cast<std::size_t>(c) * kChunkRows;
    std::size_t hi = std::min(lo + kChunkRows, n);
    // One flat row per chunk: contiguous pair packing.
    fill_rows(out.data() + lo, 1, hi - lo, mix_seed(seed, static_cast<std::uint64_t>(c)));
  }
}

Eigen::MatrixXd sample_impl(const GaussianVector& x, std::size_t n,
                            std::uint64_t seed, bool parallel) {
  if (n == 0) throw std::invalid_argument("sample_gaussian: n must be >= 1");
  const auto dim = static_cast<std::size_t>(x.dim());
  const auto rank = static_cast<std::size_t>(x.rank());
  Eigen::MatrixXd out(n, dim);
  const Eigen::MatrixXd& a = x.transform();
  const Eigen::VectorXd& mu = x.mean();
  const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    std::size_t lo = static_cast<std::size_t>(c) * kChunkRows;
    std::size_t hi = std::min(lo + kChunkRows, n);
    std::vector<double> z((hi - lo) * std::max<std::size_t>(rank, 1));
    if (rank > 0) {
      fill_rows(z.data(), hi - lo, rank, mix_seed(seed, static_cast<std::uint64_t>(c)));
    }
    for (std::size_t r = lo; r < hi; ++r) {
      Eigen::Map<const Eigen::VectorXd> zi(z.data() + (r - lo) * rank,
                                           static_cast<Eigen::Index>(rank));
      out.row(static_cast<Eigen::Index>(r)) =
          (rank > 0 ? (mu + a * zi).transpose() : mu.transpose());
    }
  }
  return out;
}

std::vector<double> predicate_samples_impl(const PredicateFunction& pred,
                                           const Eigen::VectorXd& state,
                                           const GaussianVector& x, std::size_t n,
                                           std::uint64_t seed, bool parallel) {
  if (n == 0) throw std::invalid_argument("predicate_samples: n must be >= 1");
  pred.validate(x.dim());
  const auto rank = static_cast<std::size_t>(x.rank());
  const Eigen::MatrixXd& a = x.transform();
  const Eigen::VectorXd& mu = x.mean();
  std::vector<double> out(n);
  const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    std::size_t lo = static_cast<std::size_t>(c) * kChunkRows;
    std::size_t hi = std::min(lo + kChunkRows, n);
    std::vector<double> z(std::max<std::size_t>(rank, 1));
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
    Eigen::VectorXd env(x.dim());
    for (std::size_t r = lo; r < hi; ++r) {
      // Draw the row exactly as fill_rows would.
      std::size_t i = 0;
      double z0, z1;
      for (; i + 1 < rank; i += 2) {
        next_normal_pair(rng, z0, z1);
        z[i] = z0;
        z[i + 1] = z1;
      }
      if (i < rank) {
        next_normal_pair(rng, z0, z1);
        z[i] = z0;
      }
      env = mu;
      if (rank > 0) {
        Eigen::Map<const Eigen::VectorXd> zi(z.data(), static_cast<Eigen::Index>(rank));
        env.noalias() += a * zi;
      }
      out[r] = pred.value(state, env);
    }
  }
  return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void standard_normal_fill(std::span<double> out, std::uint64_t seed, Exec exec) {
  normal_fill_impl(out, seed, exec == Exec::Parallel);
}

void standard_normal_fill_serial(std::span<double> out, std::uint64_t seed) {
  normal_fill_impl(out, seed, false);
}

Eigen::MatrixXd sample_gaussian(const GaussianVector& x, std::size_t n,
                                std::uint64_t seed, Exec exec) {
  return sample_impl(x, n, seed, exec == Exec::Parallel);
}

Eigen::MatrixXd sample_gaussian_serial(const GaussianVector& x, std::size_t n,
                                       std::uint64_t seed) {
  return sample_impl(x, n, seed, false);
}

std::vector<double> predicate_samples(const PredicateFunction& pred,
                                      const Eigen::VectorXd& state,
                                      const GaussianVector& x, std::size_t n,
                                      std::uint64_t seed, Exec exec) {
  return predicate_samples_impl(pred, state, x, n, seed, exec == Exec::Parallel);
}

std::vector<double> predicate_samples_serial(const PredicateFunction& pred,
                                             const Eigen::VectorXd& state,
                                             const GaussianVector& x, std::size_t n,
                                             std::uint64_t seed) {
  return predicate_samples_impl(pred, state, x, n, seed, false);
}

double fraction_nonneg(std::span<const double> values, Exec exec) {
  if (values.empty()) throw std::invalid_argument("fraction_nonneg: empty input");
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) if (exec == Exec::Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    count += values[static_cast<std::size_t>(i)] >= 0.0 ? 1 : 0;
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

double fraction_nonneg_serial(std::span<const double> values) {
  return fraction_nonneg(values, Exec::Serial);
}

double mean(std::span<const double> values, Exec exec) {
  if (values.empty()) throw std::invalid_argument("mean: empty input");
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (exec == Exec::Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    sum += values[static_cast<std::size_t>(i)];
  }
  return sum / static_cast<double>(n);
}

double mean_serial(std::span<const double> values) { return mean(values, Exec::Serial); }

double loss_quantile(std::vector<double> h, double beta) {
  if (h.empty()) throw std::invalid_argument("loss_quantile: empty input");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("loss_quantile: beta must be in (0,1)");
  }
  std::size_t n = h.size();
  auto k = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n) - 1e-12));
  k = std::clamp<std::size_t>(k, 1, n);
  // k-th smallest loss -h == (n-k)-th smallest h (0-based n-k).
  auto it = h.begin() + static_cast<std::ptrdiff_t>(n - k);
  std::nth_element(h.begin(), it, h.end());
  return -*it;
}

double loss_tail_mean(std::vector<double> h, double beta) {
  if (h.empty()) throw std::invalid_argument("loss_tail_mean: empty input");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("loss_tail_mean: beta must be in (0,1)");
  }
  std::size_t n = h.size();
  auto m = static_cast<std::size_t>(std::ceil((1.0 - beta) * static_cast<double>(n) - 1e-12));
  m = std::clamp<std::size_t>(m, 1, n);
  // m largest losses == m smallest h values.
  auto it = h.begin() + static_cast<std::ptrdiff_t>(m);
  std::nth_element(h.begin(), it - 1, h.end());
  double sum = std::accumulate(h.begin(), it, 0.0);
  return -sum / static_cast<double>(m);
}

}  // namespace ristl::mc
