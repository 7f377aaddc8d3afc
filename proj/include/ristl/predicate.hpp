#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>

namespace ristl {

/// Risk annotation of a predicate: chance level, or a risk metric bound.
struct RiskSpec {
  enum class Kind { Chance, EV, VaR, CVaR };

  Kind kind = Kind::Chance;
  double delta = 0.5;  // chance level, in (0,1)
  double beta = 0.9;   // VaR/CVaR level, in (0,1)
  double gamma = 0.0;  // risk bound

  static RiskSpec chance(double delta);
  static RiskSpec ev(double gamma);
  static RiskSpec var(double beta, double gamma);
  static RiskSpec cvar(double beta, double gamma);

  bool uses_beta() const { return kind == Kind::VaR || kind == Kind::CVaR; }
  std::string describe() const;
};

/// Affine predicate function h(x, X) = v.x + w.X + b0.
struct AffineFamily {
  Eigen::VectorXd v;
  Eigen::VectorXd w;
  double b0 = 0.0;
};

/// Norm-ball predicate function h(x, X) = epsilon - ||x - X_sel|| where
/// X_sel = (X[sel_i], X[sel_j]).
struct NormBallFamily {
  Eigen::Index sel_i = 0;
  Eigen::Index sel_j = 1;
  double epsilon = 0.0;
};

/// A predicate function h_m with its risk annotation. Both families are
/// concave in x.
struct PredicateFunction {
  std::string id;
  std::variant<AffineFamily, NormBallFamily> family;
  RiskSpec spec;

  bool is_affine() const { return std::holds_alternative<AffineFamily>(family); }
  const AffineFamily& affine() const { return std::get<AffineFamily>(family); }
  const NormBallFamily& ball() const { return std::get<NormBallFamily>(family); }

  Eigen::Index state_dim() const;

  /// h(x, env) for a deterministic environment vector (typically mu_tilde).
  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& env) const;

  /// d h / d x. Undefined for a norm ball exactly at its center.
  Eigen::VectorXd grad_x(const Eigen::VectorXd& x, const Eigen::VectorXd& env) const;

  /// Lipschitz constant of x -> h(x, env): ||v|| for affine, 1 for norm balls.
  double lipschitz_x() const;

  void validate(Eigen::Index env_dim) const;
};

}  // namespace ristl
