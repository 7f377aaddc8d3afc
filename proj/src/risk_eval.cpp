#include "ristl/risk_eval.hpp"

#include <cmath>

#include "ristl/common.hpp"
#include "ristl/mc_kernels.hpp"
#include "ristl/rice.hpp"

namespace ristl {

namespace {

struct BallGeometry {
  double nu;     // distance from x to the mean of the selected block
  double sigma;  // isotropic block stddev
  double eps;
};

BallGeometry ball_geometry(const PredicateFunction& pred, const Eigen::VectorXd& x,
                           const GaussianVector& env) {
  const auto& f = pred.ball();
  double sigma = 0.0;
  if (!env.isotropic_block(f.sel_i, f.sel_j, &sigma)) {
    throw Error("predicate '" + pred.id +
                "': quadrature needs an isotropic covariance block for the selector");
  }
  if (sigma <= 0.0) {
    throw Error("predicate '" + pred.id + "': selected block has zero variance");
  }
  Eigen::Vector2d c(env.mean()(f.sel_i), env.mean()(f.sel_j));
  return BallGeometry{(x.head<2>() - c).norm(), sigma, f.epsilon};
}

double chance_of(const PredicateFunction& pred, const Eigen::VectorXd& x,
                 const GaussianVector& env) {
  if (pred.is_affine()) {
    double mu, sigma;
    affine_moments(pred, x, env, &mu, &sigma);
    return chance(ScalarDistribution::gaussian(mu, sigma));
  }
  auto g = ball_geometry(pred, x, env);
  // h >= 0 iff the distance d stays within eps.
  return rice::cdf(g.eps, g.nu, g.sigma);
}

}  // namespace

void affine_moments(const PredicateFunction& pred, const Eigen::VectorXd& x,
                    const GaussianVector& env, double* mu, double* sigma) {
  const auto& f = pred.affine();
  *mu = f.v.dot(x) + f.w.dot(env.mean()) + f.b0;
  double var = f.w.dot(env.cov() * f.w);
  *sigma = std::sqrt(std::max(0.0, var));
}

ScalarDistribution pushforward(const PredicateFunction& pred, const Eigen::VectorXd& x,
                               const GaussianVector& env, const EvalMethod& method) {
  pred.validate(env.dim());
  if (std::holds_alternative<ClosedForm>(method)) {
    if (!pred.is_affine()) {
      throw Error("predicate '" + pred.id + "': closed-form pushforward needs an affine family");
    }
    double mu, sigma;
    affine_moments(pred, x, env, &mu, &sigma);
    return ScalarDistribution::gaussian(mu, sigma);
  }
  if (std::holds_alternative<Quadrature>(method)) {
    if (pred.is_affine()) {
      // Already exact; the Gaussian law is its own quadrature.
      double mu, sigma;
      affine_moments(pred, x, env, &mu, &sigma);
      return ScalarDistribution::gaussian(mu, sigma);
    }
    auto g = ball_geometry(pred, x, env);
    auto n = std::get<Quadrature>(method).nodes;
    if (n < 2) throw Error("quadrature needs at least 2 nodes");
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      samples[i] = g.eps - rice::quantile(u, g.nu, g.sigma);
    }
    return ScalarDistribution::empirical(std::move(samples));
  }
  const auto& mc = std::get<MonteCarlo>(method);
  auto samples = mc::predicate_samples(pred, x, env, mc.n, mc.seed);
  return ScalarDistribution::empirical(std::move(samples));
}

double risk_of_distribution(const ScalarDistribution& d, const RiskSpec& spec) {
  switch (spec.kind) {
    case RiskSpec::Kind::Chance:
      return chance(d);
    case RiskSpec::Kind::EV:
      return ev_neg(d);
    case RiskSpec::Kind::VaR:
      return var_beta(d, spec.beta);
    case RiskSpec::Kind::CVaR:
      return cvar_beta(d, spec.beta);
  }
  throw Error("unknown risk spec kind");
}

double risk_value(const PredicateFunction& pred, const Eigen::VectorXd& x,
                  const GaussianVector& env, const RiskSpec& spec,
                  const EvalMethod& method) {
  if (std::holds_alternative<MonteCarlo>(method)) {
    return risk_of_distribution(pushforward(pred, x, env, method), spec);
  }

  if (pred.is_affine()) {
    return risk_of_distribution(pushforward(pred, x, env, ClosedForm{}), spec);
  }

  // Norm ball: evaluate the radial law directly, without materializing the
  // quantile grid.
  auto g = ball_geometry(pred, x, env);
  switch (spec.kind) {
    case RiskSpec::Kind::Chance:
      return chance_of(pred, x, env);
    case RiskSpec::Kind::EV:
      return rice::mean(g.nu, g.sigma) - g.eps;
    case RiskSpec::Kind::VaR:
      return rice::quantile(spec.beta, g.nu, g.sigma) - g.eps;
    case RiskSpec::Kind::CVaR: {
      double q = rice::quantile(spec.beta, g.nu, g.sigma);
      return rice::tail_mean(q, g.nu, g.sigma) - g.eps;
    }
  }
  throw Error("unknown risk spec kind");
}

}  // namespace ristl
