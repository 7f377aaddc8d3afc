#include "ristl/predicate.hpp"

#include <cmath>

#include "ristl/common.hpp"

namespace ristl {

RiskSpec RiskSpec::chance(double delta) {
  RiskSpec s;
  s.kind = Kind::Chance;
  s.delta = delta;
  return s;
}

RiskSpec RiskSpec::ev(double gamma) {
  RiskSpec s;
  s.kind = Kind::EV;
  s.gamma = gamma;
  return s;
}

RiskSpec RiskSpec::var(double beta, double gamma) {
  RiskSpec s;
  s.kind = Kind::VaR;
  s.beta = beta;
  s.gamma = gamma;
  return s;
}

RiskSpec RiskSpec::cvar(double beta, double gamma) {
  RiskSpec s;
  s.kind = Kind::CVaR;
  s.beta = beta;
  s.gamma = gamma;
  return s;
}

std::string RiskSpec::describe() const {
  switch (kind) {
    case Kind::Chance:
      return "chance(delta=" + std::to_string(delta) + ")";
    case Kind::EV:
      return "ev(gamma=" + std::to_string(gamma) + ")";
    case Kind::VaR:
      return "var(beta=" + std::to_string(beta) + ", gamma=" + std::to_string(gamma) + ")";
    case Kind::CVaR:
      return "cvar(beta=" + std::to_string(beta) + ", gamma=" + std::to_string(gamma) + ")";
  }
  return "?";
}

Eigen::Index PredicateFunction::state_dim() const {
  if (is_affine()) return affine().v.size();
  return 2;
}

double PredicateFunction::value(const Eigen::VectorXd& x, const Eigen::VectorXd& env) const {
  if (is_affine()) {
    const auto& f = affine();
    return f.v.dot(x) + f.w.dot(env) + f.b0;
  }
  const auto& f = ball();
  Eigen::Vector2d c(env(f.sel_i), env(f.sel_j));
  return f.epsilon - (x.head<2>() - c).norm();
}

Eigen::VectorXd PredicateFunction::grad_x(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& env) const {
  if (is_affine()) return affine().v;
  const auto& f = ball();
  Eigen::Vector2d c(env(f.sel_i), env(f.sel_j));
  Eigen::Vector2d d = x.head<2>() - c;
  double n = d.norm();
  if (n < 1e-14) throw Error("norm-ball gradient undefined at the center");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  g.head<2>() = -d / n;
  return g;
}

double PredicateFunction::lipschitz_x() const {
  return is_affine() ? affine().v.norm() : 1.0;
}

void PredicateFunction::validate(Eigen::Index env_dim) const {
  auto check_prob = [&](double p, const char* name) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error("predicate '" + id + "': " + name + " must be strictly in (0,1)");
    }
  };
  if (spec.kind == RiskSpec::Kind::Chance) check_prob(spec.delta, "delta");
  if (spec.uses_beta()) check_prob(spec.beta, "beta");

  if (is_affine()) {
    const auto& f = affine();
    if (f.w.size() != env_dim) {
      throw Error("predicate '" + id + "': w length does not match the environment dimension");
    }
    if (f.v.norm() == 0.0 && f.w.norm() == 0.0) {
      throw Error("predicate '" + id + "': affine family needs v != 0 or w != 0");
    }
  } else {
    const auto& f = ball();
    if (f.epsilon <= 0.0) {
      throw Error("predicate '" + id + "': norm-ball radius must be positive");
    }
    if (f.sel_i < 0 || f.sel_j < 0 || f.sel_i >= env_dim || f.sel_j >= env_dim ||
        f.sel_i == f.sel_j) {
      throw Error("predicate '" + id + "': selector out of range");
    }
  }
}

}  // namespace ristl
