#include "ristl/rice.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "ristl/common.hpp"

namespace ristl::rice {

namespace {

constexpr std::size_t kOrder = 256;
// The density is negligible beyond nu + kTailSigmas * sigma.
constexpr double kTailSigmas = 14.0;

struct GlTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n via the three-term recurrence.
GlTable build_gl(std::size_t n) {
  GlTable t;
  t.nodes.resize(n);
  t.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    t.nodes[i] = x;
    t.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return t;
}

const GlTable& gl_table(std::size_t order) {
  static std::map<std::size_t, GlTable> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gl(order)).first;
  return it->second;
}

double integrate_pdf(double lo, double hi, double nu, double sigma,
                     bool weighted_by_r) {
  if (hi <= lo) return 0.0;
  const auto& t = gl_table(kOrder);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < kOrder; ++i) {
    double r = mid + half * t.nodes[i];
    double f = pdf(r, nu, sigma);
    acc += t.weights[i] * (weighted_by_r ? r * f : f);
  }
  return acc * half;
}

}  // namespace

const std::vector<double>& gl_nodes(std::size_t order) { return gl_table(order).nodes; }
const std::vector<double>& gl_weights(std::size_t order) { return gl_table(order).weights; }

double log_bessel_i0(double z) {
  if (z < 0.0) throw std::invalid_argument("log_bessel_i0: negative argument");
  if (z < 18.0) {
    return std::log(std::cyl_bessel_i(0.0, z));
  }
  // I0(z) ~ e^z / sqrt(2 pi z) * (1 + 1/(8z) + 9/(128 z^2) + ...)
  double inv = 1.0 / z;
  double series = 1.0 + inv * (0.125 + inv * (0.0703125 + inv * 0.0732421875));
  return z - 0.5 * std::log(2.0 * M_PI * z) + std::log(series);
}

double pdf(double r, double nu, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("rice::pdf: sigma must be > 0");
  if (nu < 0.0) throw std::invalid_argument("rice::pdf: nu must be >= 0");
  if (r <= 0.0) return 0.0;
  double s2 = sigma * sigma;
  double logf = std::log(r / s2) - (r * r + nu * nu) / (2.0 * s2) +
                log_bessel_i0(r * nu / s2);
  return std::exp(logf);
}

double cdf(double r, double nu, double sigma) {
  if (r <= 0.0) return 0.0;
  double hi = nu + kTailSigmas * sigma;
  if (r >= hi) return 1.0;
  // Integrate the shorter side for accuracy.
  if (r < 0.5 * hi) return integrate_pdf(0.0, r, nu, sigma, false);
  return 1.0 - integrate_pdf(r, hi, nu, sigma, false);
}

double quantile(double p, double nu, double sigma) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("rice::quantile: p must be in (0,1)");
  }
  double lo = 0.0, hi = nu + kTailSigmas * sigma;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid, nu, sigma) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

double mean(double nu, double sigma) {
  return integrate_pdf(0.0, nu + kTailSigmas * sigma, nu, sigma, true);
}

double tail_mean(double q, double nu, double sigma) {
  double hi = nu + kTailSigmas * sigma;
  if (q >= hi) throw Error("rice::tail_mean: no tail mass beyond q");
  double lo = std::max(q, 0.0);
  double mass = integrate_pdf(lo, hi, nu, sigma, false);
  if (mass <= 1e-300) throw Error("rice::tail_mean: no tail mass beyond q");
  return integrate_pdf(lo, hi, nu, sigma, true) / mass;
}

}  // namespace ristl::rice
