#pragma once

#include <vector>

namespace ristl {

/// Scalar law of a predicate function value h(x, X) for fixed x: either an
/// exact Gaussian (closed-form pushforward) or an empirical sample set
/// (Monte Carlo or quadrature nodes). Empirical samples are kept sorted
/// ascending; a Gaussian with sigma == 0 is a point mass.
struct ScalarDistribution {
  enum class Kind { Gaussian, Empirical };

  Kind kind = Kind::Gaussian;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> samples;

  static ScalarDistribution gaussian(double mu, double sigma);
  static ScalarDistribution empirical(std::vector<double> samples);
};

/// P(h >= 0).
double chance(const ScalarDistribution& d);

/// E[-h].
double ev_neg(const ScalarDistribution& d);

/// VaR_beta(-h): the beta-quantile of the loss -h, i.e. the smallest
/// threshold whose CDF reaches beta.
double var_beta(const ScalarDistribution& d, double beta);

/// CVaR_beta(-h): mean of the loss tail beyond VaR_beta. For the empirical
/// variant this is the average of the ceil((1-beta)*N) largest losses.
double cvar_beta(const ScalarDistribution& d, double beta);

}  // namespace ristl
