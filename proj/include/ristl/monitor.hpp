#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ristl/formula.hpp"
#include "ristl/gaussian.hpp"
#include "ristl/predicate.hpp"
#include "ristl/risk_eval.hpp"
#include "ristl/trajectory.hpp"

namespace ristl {

using PredicateTable = std::map<std::string, PredicateFunction>;

/// Stochastic semantics: predicate leaves evaluate P(h >= 0) - delta or
/// gamma - R(-h) against the environment law.
struct StochasticMode {
  const GaussianVector* env = nullptr;
  EvalMethod method = ClosedForm{};
};

/// Deterministic STL semantics: leaves evaluate h(x, mu) - c. Determinized
/// leaves carry their own threshold; stochastic leaves fall back to the
/// thresholds map.
struct DeterministicMode {
  Eigen::VectorXd mu;
  std::map<std::string, double> thresholds;
};

using MonitorMode = std::variant<StochasticMode, DeterministicMode>;

struct RobustnessResult {
  double value = 0.0;
  bool satisfied_strict = false;  // value > 0
  bool satisfied_weak = false;    // value >= 0
  std::vector<std::pair<std::string, double>> breakdown;  // (node path, rho at t)
};

/// rho of a single chance/risk predicate at a state.
double rho_predicate(const PredicateFunction& pred, const Eigen::VectorXd& x,
                     const GaussianVector& env, const EvalMethod& method = ClosedForm{});

/// rho of a determinized STL predicate: h(x, mu) - c.
double rho_stl_predicate(const PredicateFunction& pred, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& mu, double c);

/// Quantitative semantics over a sampled trace. Window extremes are taken
/// over trace samples with interval endpoints snapped to the nearest sample.
/// Requires the trace to cover [t, t + horizon(f)].
RobustnessResult rho(const Formula& f, const Trajectory& traj, double t,
                     const PredicateTable& preds, const MonitorMode& mode);

/// (strict, weak) satisfaction thresholds of rho.
std::pair<bool, bool> sat(const Formula& f, const Trajectory& traj, double t,
                          const PredicateTable& preds, const MonitorMode& mode);

}  // namespace ristl
