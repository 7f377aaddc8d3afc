#include "ristl/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ristl/common.hpp"

namespace ristl {

double rho_predicate(const PredicateFunction& pred, const Eigen::VectorXd& x,
                     const GaussianVector& env, const EvalMethod& method) {
  double r = risk_value(pred, x, env, pred.spec, method);
  if (pred.spec.kind == RiskSpec::Kind::Chance) return r - pred.spec.delta;
  return pred.spec.gamma - r;
}

double rho_stl_predicate(const PredicateFunction& pred, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& mu, double c) {
  return pred.value(x, mu) - c;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Evaluator {
 public:
  Evaluator(const Trajectory& traj, const PredicateTable& preds, const MonitorMode& mode)
      : traj_(traj), preds_(preds), mode_(mode), k_(traj.size()) {}

  const std::vector<double>& eval(const Formula& f) {
    auto it = memo_.find(&f);
    if (it != memo_.end()) return it->second;
    std::vector<double> values = compute(f);
    return memo_.emplace(&f, std::move(values)).first->second;
  }

  void breakdown(const Formula& f, const std::string& path, std::size_t index,
                 std::vector<std::pair<std::string, double>>& out) {
    out.emplace_back(path, eval(f)[index]);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NotNode>) {
            breakdown(*n.child, path + ".child", index, out);
          } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode> ||
                               std::is_same_v<T, UntilNode>) {
            breakdown(*n.left, path + ".left", index, out);
            breakdown(*n.right, path + ".right", index, out);
          } else if constexpr (std::is_same_v<T, EventuallyNode> ||
                               std::is_same_v<T, AlwaysNode>) {
            breakdown(*n.child, path + ".child", index, out);
          }
        },
        f.node());
  }

 private:
  const Trajectory& traj_;
  const PredicateTable& preds_;
  const MonitorMode& mode_;
  std::size_t k_;
  std::map<const Formula*, std::vector<double>> memo_;

  const PredicateFunction& lookup(const std::string& id) const {
    auto it = preds_.find(id);
    if (it == preds_.end()) throw Error("monitor: unknown predicate '" + id + "'");
    return it->second;
  }

  std::vector<double> leaf_values(const PredicateNode& leaf) const {
    const PredicateFunction& pred = lookup(leaf.id);
    std::vector<double> out(k_);
    if (const auto* det = std::get_if<DeterministicMode>(&mode_)) {
      double c;
      if (leaf.threshold) {
        c = *leaf.threshold;
      } else {
        auto it = det->thresholds.find(leaf.id);
        if (it == det->thresholds.end()) {
          throw Error("monitor: no threshold for stochastic leaf '" + leaf.id +
                      "' in deterministic mode");
        }
        c = it->second;
      }
      for (std::size_t i = 0; i < k_; ++i) {
        out[i] = rho_stl_predicate(pred, traj_.states[i], det->mu, c);
      }
      return out;
    }
    if (leaf.threshold) {
      throw Error("monitor: determinized leaf '" + leaf.id + "' under stochastic semantics");
    }
    const auto& st = std::get<StochasticMode>(mode_);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(k_); ++i) {
      out[static_cast<std::size_t>(i)] =
          rho_predicate(pred, traj_.states[static_cast<std::size_t>(i)], *st.env, st.method);
    }
    return out;
  }

  // Sample window [t_i + a, t_i + b] with endpoint snapping.
  std::pair<std::size_t, std::size_t> window_indices(std::size_t i, const Interval& w) const {
    std::size_t lo = traj_.nearest_index(traj_.times[i] + w.a);
    std::size_t hi = traj_.nearest_index(traj_.times[i] + w.b);
    if (lo > hi) hi = lo;
    return {lo, hi};
  }

  std::vector<double> compute(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> std::vector<double> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TrueNode>) {
            return std::vector<double>(k_, kInf);
          } else if constexpr (std::is_same_v<T, PredicateNode>) {
            return leaf_values(n);
          } else if constexpr (std::is_same_v<T, NotNode>) {
            std::vector<double> out = eval(*n.child);
            for (double& v : out) v = -v;
            return out;
          } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
            const auto& l = eval(*n.left);
            const auto& r = eval(*n.right);
            std::vector<double> out(k_);
            for (std::size_t i = 0; i < k_; ++i) {
              out[i] = std::is_same_v<T, AndNode> ? std::min(l[i], r[i])
                                                  : std::max(l[i], r[i]);
            }
            return out;
          } else if constexpr (std::is_same_v<T, EventuallyNode> ||
                               std::is_same_v<T, AlwaysNode>) {
            const auto& c = eval(*n.child);
            std::vector<double> out(k_);
            for (std::size_t i = 0; i < k_; ++i) {
              auto [lo, hi] = window_indices(i, n.window);
              double acc = c[lo];
              for (std::size_t j = lo + 1; j <= hi; ++j) {
                acc = std::is_same_v<T, AlwaysNode> ? std::min(acc, c[j])
                                                    : std::max(acc, c[j]);
              }
              out[i] = acc;
            }
            return out;
          } else {  // UntilNode
            const auto& l = eval(*n.left);
            const auto& r = eval(*n.right);
            std::vector<double> out(k_);
            for (std::size_t i = 0; i < k_; ++i) {
              auto [lo, hi] = window_indices(i, n.window);
              double best = -kInf;
              double run_min = kInf;
              std::size_t j = i;  // left clause covers [t_i, t'']
              for (std::size_t w = lo; w <= hi; ++w) {
                while (j <= w) {
                  run_min = std::min(run_min, l[j]);
                  ++j;
                }
                best = std::max(best, std::min(r[w], run_min));
              }
              out[i] = best;
            }
            return out;
          }
        },
        f.node());
  }
};

}  // namespace

RobustnessResult rho(const Formula& f, const Trajectory& traj, double t,
                     const PredicateTable& preds, const MonitorMode& mode) {
  traj.validate();
  double need = t + horizon(f);
  if (need > traj.t_end() + 1e-9) {
    throw Error("trace horizon too short: formula needs coverage up to t=" +
                std::to_string(need) + " but the trace ends at " +
                std::to_string(traj.t_end()));
  }
  if (t < traj.t_begin() - 1e-9) {
    throw Error("evaluation time precedes the trace start");
  }

  Evaluator ev(traj, preds, mode);
  std::size_t index = traj.nearest_index(t);
  RobustnessResult result;
  result.value = ev.eval(f)[index];
  result.satisfied_strict = result.value > 0.0;
  result.satisfied_weak = result.value >= 0.0;
  ev.breakdown(f, "root", index, result.breakdown);
  return result;
}

std::pair<bool, bool> sat(const Formula& f, const Trajectory& traj, double t,
                          const PredicateTable& preds, const MonitorMode& mode) {
  RobustnessResult r = rho(f, traj, t, preds, mode);
  return {r.satisfied_strict, r.satisfied_weak};
}

}  // namespace ristl
