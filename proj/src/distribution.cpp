#include "ristl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ristl/common.hpp"
#include "ristl/normal.hpp"

namespace ristl {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("risk level beta must be in (0,1)");
  }
}

// Index (1-based) of the beta-quantile in a sorted sample of size n:
// smallest k with k/n >= beta.
std::size_t quantile_index(double beta, std::size_t n) {
  auto k = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n) - 1e-12));
  return std::clamp<std::size_t>(k, 1, n);
}

}  // namespace

ScalarDistribution ScalarDistribution::gaussian(double mu, double sigma) {
  if (sigma < 0.0 || !std::isfinite(mu) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian distribution needs finite mu and sigma >= 0");
  }
  ScalarDistribution d;
  d.kind = Kind::Gaussian;
  d.mu = mu;
  d.sigma = sigma;
  return d;
}

ScalarDistribution ScalarDistribution::empirical(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical distribution needs at least one sample");
  }
  ScalarDistribution d;
  d.kind = Kind::Empirical;
  d.samples = std::move(samples);
  std::sort(d.samples.begin(), d.samples.end());
  return d;
}

double chance(const ScalarDistribution& d) {
  if (d.kind == ScalarDistribution::Kind::Gaussian) {
    if (d.sigma == 0.0) return d.mu >= 0.0 ? 1.0 : 0.0;
    return norm_cdf(d.mu / d.sigma);
  }
  auto first = std::lower_bound(d.samples.begin(), d.samples.end(), 0.0);
  auto count = static_cast<double>(d.samples.end() - first);
  return count / static_cast<double>(d.samples.size());
}

double ev_neg(const ScalarDistribution& d) {
  if (d.kind == ScalarDistribution::Kind::Gaussian) return -d.mu;
  double sum = std::accumulate(d.samples.begin(), d.samples.end(), 0.0);
  return -sum / static_cast<double>(d.samples.size());
}

double var_beta(const ScalarDistribution& d, double beta) {
  require_beta(beta);
  if (d.kind == ScalarDistribution::Kind::Gaussian) {
    if (d.sigma == 0.0) return -d.mu;
    return -d.mu + d.sigma * norm_quantile(beta);
  }
  // Losses -h sorted ascending are the reversed negated h samples; the k-th
  // smallest loss is -samples[n-k].
  std::size_t n = d.samples.size();
  std::size_t k = quantile_index(beta, n);
  return -d.samples[n - k];
}

double cvar_beta(const ScalarDistribution& d, double beta) {
  require_beta(beta);
  if (d.kind == ScalarDistribution::Kind::Gaussian) {
    if (d.sigma == 0.0) return -d.mu;  // point mass: the tail is the mass itself
    double z = norm_quantile(beta);
    return -d.mu + d.sigma * norm_pdf(z) / (1.0 - beta);
  }
  std::size_t n = d.samples.size();
  if (d.samples.front() == d.samples.back()) {
    throw Error("cvar_beta: empirical tail is empty (all samples equal)");
  }
  auto m = static_cast<std::size_t>(std::ceil((1.0 - beta) * static_cast<double>(n) - 1e-12));
  m = std::clamp<std::size_t>(m, 1, n);
  // m largest losses correspond to the m smallest h samples.
  double sum = std::accumulate(d.samples.begin(), d.samples.begin() + static_cast<long>(m), 0.0);
  return -sum / static_cast<double>(m);
}

}  // namespace ristl
