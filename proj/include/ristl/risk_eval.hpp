#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>

#include "ristl/distribution.hpp"
#include "ristl/gaussian.hpp"
#include "ristl/predicate.hpp"

namespace ristl {

/// How to evaluate the law of h(x, X).
struct ClosedForm {};
struct MonteCarlo {
  std::size_t n = 100000;
  std::uint64_t seed = 0;
};
struct Quadrature {
  std::size_t nodes = 512;  // equal-probability quantile grid size
};
using EvalMethod = std::variant<ClosedForm, MonteCarlo, Quadrature>;

/// Distribution of h(x, X) for fixed x.
///   - ClosedForm: affine families only; exact Gaussian.
///   - Quadrature: norm balls with an isotropic covariance block; the radial
///     noncentral-chi law is inverted on an equal-probability grid.
///   - MonteCarlo: any family.
ScalarDistribution pushforward(const PredicateFunction& pred, const Eigen::VectorXd& x,
                               const GaussianVector& env, const EvalMethod& method);

/// Chance probability P(h >= 0) for Chance specs, R(-h) otherwise.
/// Affine predicates use the exact Gaussian law regardless of method
/// (unless Monte Carlo is explicitly requested); norm balls use the radial
/// quadrature when the covariance block is isotropic, else Monte Carlo.
double risk_value(const PredicateFunction& pred, const Eigen::VectorXd& x,
                  const GaussianVector& env, const RiskSpec& spec,
                  const EvalMethod& method = ClosedForm{});

/// Applies a risk spec to an already-pushed-forward scalar law.
double risk_of_distribution(const ScalarDistribution& d, const RiskSpec& spec);

/// Mean and stddev of the affine pushforward (exact).
void affine_moments(const PredicateFunction& pred, const Eigen::VectorXd& x,
                    const GaussianVector& env, double* mu, double* sigma);

}  // namespace ristl
