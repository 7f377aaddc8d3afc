#include "ristl/determinize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ristl/common.hpp"
#include "ristl/normal.hpp"
#include "ristl/optim.hpp"
#include "ristl/rice.hpp"

namespace ristl {

namespace {

constexpr double kEmptyTol = 1e-12;

double spec_threshold(const RiskSpec& spec) {
  return spec.kind == RiskSpec::Kind::Chance ? spec.delta : spec.gamma;
}

bool value_satisfies(const RiskSpec& spec, double value) {
  if (spec.kind == RiskSpec::Kind::Chance) return value >= spec.delta;
  return value <= spec.gamma;
}

// Range of v.x over the box with the attaining vertices (zero coefficients
// pin to the lower bound, the lexicographically smallest choice).
void linear_range(const Eigen::VectorXd& v, const DomainBox& box, double* lo, double* hi,
                  Eigen::VectorXd* xlo, Eigen::VectorXd* xhi) {
  Eigen::VectorXd a(box.dim()), b(box.dim());
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    if (v(i) > 0.0) {
      a(i) = box.lower(i);
      b(i) = box.upper(i);
    } else if (v(i) < 0.0) {
      a(i) = box.upper(i);
      b(i) = box.lower(i);
    } else {
      a(i) = box.lower(i);
      b(i) = box.lower(i);
    }
  }
  *lo = v.dot(a);
  *hi = v.dot(b);
  if (xlo != nullptr) *xlo = a;
  if (xhi != nullptr) *xhi = b;
}

struct BallSet {
  Eigen::Vector2d center;
  double radius;  // epsilon - c
};

BallSet ball_set(const PredicateFunction& pred, double c, const GaussianVector& env) {
  const auto& f = pred.ball();
  BallSet s;
  s.center = Eigen::Vector2d(env.mean()(f.sel_i), env.mean()(f.sel_j));
  s.radius = f.epsilon - c;
  return s;
}

// Largest feasible radius from the ball center along direction u inside the
// box, capped at the ball radius.
double directional_radius(const BallSet& s, const DomainBox& box,
                          const Eigen::Vector2d& u) {
  double r = s.radius;
  for (Eigen::Index i = 0; i < 2; ++i) {
    if (u(i) > kEmptyTol) {
      r = std::min(r, (box.upper(i) - s.center(i)) / u(i));
    } else if (u(i) < -kEmptyTol) {
      r = std::min(r, (box.lower(i) - s.center(i)) / u(i));
    }
  }
  return std::max(0.0, r);
}

constexpr int kBoundaryPoints = 720;

}  // namespace

PredRef PredRef::parse(const std::string& token) {
  PredRef r;
  if (!token.empty() && token.front() == '!') {
    r.negated = true;
    r.id = token.substr(1);
  } else {
    r.id = token;
  }
  if (r.id.empty()) throw Error("empty predicate reference");
  return r;
}

Eigen::VectorXd worst_point_affine(const PredicateFunction& pred, double c,
                                   const DomainBox& box, const GaussianVector& env) {
  if (!pred.is_affine()) {
    throw Error("worst_point_affine: predicate '" + pred.id + "' is not affine");
  }
  const auto& f = pred.affine();
  if (f.v.norm() == 0.0) {
    throw Error("worst_point_affine: predicate '" + pred.id + "' has no state dependence");
  }
  double k = f.w.dot(env.mean()) + f.b0;
  double q = c - k;  // design set: v.x >= q within the box
  double lo, hi;
  Eigen::VectorXd xlo, xhi;
  linear_range(f.v, box, &lo, &hi, &xlo, &xhi);
  if (q > hi + kEmptyTol * std::max(1.0, std::abs(hi))) {
    throw Error("design set is empty for predicate '" + pred.id + "' at c=" +
                std::to_string(c));
  }
  if (q <= lo) return xlo;
  // Slide along the segment between the extreme vertices until v.x == q;
  // the segment stays inside the box and the result lies on the active
  // halfspace boundary.
  double s = (q - lo) / (hi - lo);
  return xlo + s * (xhi - xlo);
}

InclusionCheck check_inclusion(const PredicateFunction& pred, const RiskSpec& spec,
                               double c, const DomainBox& box, const GaussianVector& env,
                               const EvalMethod& method) {
  InclusionCheck out;
  out.threshold = spec_threshold(spec);

  if (pred.is_affine()) {
    out.worst_point = worst_point_affine(pred, c, box, env);
    out.worst_value = risk_value(pred, out.worst_point, env, spec, method);
    out.holds = value_satisfies(spec, out.worst_value);
    return out;
  }

  BallSet s = ball_set(pred, c, env);
  if (s.radius < -kEmptyTol || box.distance(s.center) > s.radius + kEmptyTol) {
    throw Error("design set is empty for predicate '" + pred.id + "' at c=" +
                std::to_string(c));
  }

  double sigma = 0.0;
  bool isotropic = env.isotropic_block(pred.ball().sel_i, pred.ball().sel_j, &sigma);

  if (isotropic) {
    // Any boundary point at the largest feasible radius is worst.
    double r_worst = 0.0;
    Eigen::Vector2d u_worst(1.0, 0.0);
    for (int i = 0; i < kBoundaryPoints; ++i) {
      double a = 2.0 * M_PI * i / kBoundaryPoints;
      Eigen::Vector2d u(std::cos(a), std::sin(a));
      double r = directional_radius(s, box, u);
      if (r > r_worst) {
        r_worst = r;
        u_worst = u;
      }
    }
    Eigen::VectorXd x = box.clamp(s.center + r_worst * u_worst);
    out.worst_point = x;
    out.worst_value = risk_value(pred, x, env, spec, method);
    out.holds = value_satisfies(spec, out.worst_value);
    return out;
  }

  // Anisotropic block: scan the boundary discretization for the worst value.
  bool have = false;
  for (int i = 0; i < kBoundaryPoints; ++i) {
    double a = 2.0 * M_PI * i / kBoundaryPoints;
    Eigen::Vector2d u(std::cos(a), std::sin(a));
    double r = directional_radius(s, box, u);
    Eigen::VectorXd x = box.clamp(s.center + r * u);
    double value = risk_value(pred, x, env, spec, method);
    bool worse = spec.kind == RiskSpec::Kind::Chance ? (value < out.worst_value)
                                                     : (value > out.worst_value);
    if (!have || worse) {
      have = true;
      out.worst_value = value;
      out.worst_point = x;
    }
  }
  out.holds = value_satisfies(spec, out.worst_value);
  return out;
}

double minimal_c(const PredicateFunction& pred, const RiskSpec& spec,
                 const DomainBox& box, const GaussianVector& env, double tol) {
  if (pred.is_affine()) {
    // Level-set alignment: the worst-point inequality holds with equality on
    // the shifted hyperplane. With h(x,X) = v.x + w.X + b0, mu_h = s + k and
    // sigma_h independent of x, solve the spec inequality for s = v.x.
    double mu_h, sigma_h;
    affine_moments(pred, Eigen::VectorXd::Zero(box.dim()), env, &mu_h, &sigma_h);
    double k = mu_h;  // contribution of w.mu + b0 at x = 0
    double s_req;
    switch (spec.kind) {
      case RiskSpec::Kind::Chance:
        s_req = (sigma_h > 0.0 ? sigma_h * norm_quantile(spec.delta) : 0.0) - k;
        break;
      case RiskSpec::Kind::EV:
        s_req = -spec.gamma - k;
        break;
      case RiskSpec::Kind::VaR:
        s_req = sigma_h * norm_quantile(spec.beta) - spec.gamma - k;
        break;
      case RiskSpec::Kind::CVaR:
        s_req = sigma_h * norm_pdf(norm_quantile(spec.beta)) / (1.0 - spec.beta) -
                spec.gamma - k;
        break;
      default:
        throw Error("unknown risk spec kind");
    }
    double c_min = s_req + k;
    const auto& f = pred.affine();
    if (f.v.norm() > 0.0) {
      double lo, hi;
      linear_range(f.v, box, &lo, &hi, nullptr, nullptr);
      if (s_req > hi + tol) {
        throw Error("no feasible c for predicate '" + pred.id +
                    "': inclusion fails even for the singleton design set");
      }
    } else if (!value_satisfies(spec, risk_value(pred, box.center(), env, spec))) {
      throw Error("no feasible c for predicate '" + pred.id +
                  "': the state-independent predicate violates its spec");
    }
    return c_min;
  }

  // Norm ball: the design set is a ball of radius epsilon - c; bisect on c.
  BallSet probe = ball_set(pred, 0.0, env);
  double eps = pred.ball().epsilon;
  double c_hi = eps - box.distance(probe.center);
  if (!check_inclusion(pred, spec, c_hi, box, env).holds) {
    throw Error("no feasible c for predicate '" + pred.id +
                "': inclusion fails even for the singleton design set");
  }
  double c_lo = eps - box.max_vertex_distance(probe.center);
  if (check_inclusion(pred, spec, c_lo, box, env).holds) return c_lo;
  while (c_hi - c_lo > tol) {
    double mid = 0.5 * (c_lo + c_hi);
    if (check_inclusion(pred, spec, mid, box, env).holds) {
      c_hi = mid;
    } else {
      c_lo = mid;
    }
  }
  return c_hi;
}

double member_value(const PredicateFunction& pred, const PredRef& ref, double c,
                    double chi, const Eigen::VectorXd& x, const Eigen::VectorXd& mu) {
  double base = pred.value(x, mu) - c;
  if (!ref.negated) return base - chi;
  if (!pred.is_affine()) {
    throw Error("negated norm-ball predicate '" + pred.id + "' is not concave");
  }
  return -base - chi;
}

double predicate_slack(const PredicateFunction& pred, double c, double chi,
                       const DomainBox& box, const Eigen::VectorXd& mu,
                       Eigen::VectorXd* argmax) {
  if (pred.is_affine()) {
    const auto& f = pred.affine();
    double lo, hi;
    Eigen::VectorXd xlo, xhi;
    linear_range(f.v, box, &lo, &hi, &xlo, &xhi);
    double k = f.w.dot(mu) + f.b0;
    if (argmax != nullptr) *argmax = xhi;
    return hi + k - c - chi;
  }
  const auto& f = pred.ball();
  Eigen::Vector2d center(mu(f.sel_i), mu(f.sel_j));
  Eigen::VectorXd best = box.clamp(center);
  if (argmax != nullptr) *argmax = best;
  return f.epsilon - (best.head<2>() - center).norm() - c - chi;
}

std::vector<std::vector<PredRef>> conjunction_groups(const Formula& f) {
  std::vector<std::vector<PredRef>> groups;

  auto pure_conj = [](const Formula& g, auto&& self) -> bool {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PredicateNode> || std::is_same_v<T, TrueNode>) {
            return true;
          } else if constexpr (std::is_same_v<T, AndNode>) {
            return self(*n.left, self) && self(*n.right, self);
          } else {
            return false;
          }
        },
        g.node());
  };

  auto leaves = [](const Formula& g, std::vector<PredRef>& out, auto&& self) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PredicateNode>) {
            out.push_back(PredRef{n.id, false});
          } else if constexpr (std::is_same_v<T, AndNode>) {
            self(*n.left, out, self);
            self(*n.right, out, self);
          }
        },
        g.node());
  };

  auto walk = [&](const Formula& g, auto&& self) -> void {
    if (pure_conj(g, pure_conj)) {
      std::vector<PredRef> members;
      leaves(g, members, leaves);
      if (members.size() > 1) groups.push_back(std::move(members));
      return;
    }
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NotNode>) {
            self(*n.child, self);
          } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
            self(*n.left, self);
            self(*n.right, self);
          } else if constexpr (std::is_same_v<T, UntilNode>) {
            self(*n.left, self);
            self(*n.right, self);
          } else if constexpr (std::is_same_v<T, EventuallyNode> ||
                               std::is_same_v<T, AlwaysNode>) {
            self(*n.child, self);
          }
        },
        g.node());
  };
  walk(f, walk);
  return groups;
}

Assumption1Result check_assumption1(const std::vector<std::vector<PredRef>>& groups,
                                    const PredicateTable& preds,
                                    const std::map<std::string, double>& c,
                                    const std::map<std::string, double>& chi,
                                    const DomainBox& box, const Eigen::VectorXd& mu) {
  Assumption1Result result;

  auto threshold_of = [&](const std::string& id) -> std::pair<double, double> {
    auto ic = c.find(id);
    auto ix = chi.find(id);
    if (ic == c.end()) throw Error("assumption check: no threshold for '" + id + "'");
    return {ic->second, ix == chi.end() ? 0.0 : ix->second};
  };

  // Every predicate alone first (closed-form concave maximum).
  for (const auto& [id, pred] : preds) {
    if (c.find(id) == c.end()) continue;
    auto [cm, xm] = threshold_of(id);
    Assumption1Result::Entry e;
    Eigen::VectorXd arg;
    e.value = predicate_slack(pred, cm, xm, box, mu, &arg);
    e.witness = arg;
    e.members = {id};
    result.ok = result.ok && e.value > 0.0;
    result.entries.push_back(std::move(e));
  }

  // Conjunction groups via max-min search.
  for (const auto& group : groups) {
    std::vector<const PredicateFunction*> ps;
    std::vector<double> cs, chis;
    std::vector<std::string> names;
    for (const auto& ref : group) {
      auto it = preds.find(ref.id);
      if (it == preds.end()) throw Error("assumption check: unknown predicate '" + ref.id + "'");
      auto [cm, xm] = threshold_of(ref.id);
      ps.push_back(&it->second);
      cs.push_back(cm);
      chis.push_back(xm);
      names.push_back(ref.describe());
    }
    auto objective = [&](const Eigen::VectorXd& x) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < ps.size(); ++k) {
        m = std::min(m, member_value(*ps[k], group[k], cs[k], chis[k], x, mu));
      }
      return m;
    };
    Assumption1Result::Entry e;
    double value = 0.0;
    e.witness = maximize_over_box(objective, box, &value);
    e.value = value;
    e.members = names;
    result.ok = result.ok && e.value > 0.0;
    result.entries.push_back(std::move(e));
  }
  return result;
}

std::pair<FormulaPtr, FormulaPtr> determinize_formula(
    const Formula& f, const std::map<std::string, double>& c,
    const std::map<std::string, double>& chi) {
  if (any_determinized(f)) {
    throw Error("formula already contains determinized leaves");
  }

  auto lookup = [](const std::map<std::string, double>& m, const std::string& id) {
    auto it = m.find(id);
    if (it == m.end()) throw Error("determinize: no threshold for predicate '" + id + "'");
    return it->second;
  };

  auto rewrite = [&](const Formula& g, bool modified, auto&& self) -> FormulaPtr {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TrueNode>) {
            return Formula::truth();
          } else if constexpr (std::is_same_v<T, PredicateNode>) {
            double thr = lookup(c, n.id) + (modified ? lookup(chi, n.id) : 0.0);
            return Formula::pred_stl(n.id, thr);
          } else if constexpr (std::is_same_v<T, NotNode>) {
            return Formula::negate(self(*n.child, modified, self));
          } else if constexpr (std::is_same_v<T, AndNode>) {
            return Formula::conj(self(*n.left, modified, self), self(*n.right, modified, self));
          } else if constexpr (std::is_same_v<T, OrNode>) {
            return Formula::disj(self(*n.left, modified, self), self(*n.right, modified, self));
          } else if constexpr (std::is_same_v<T, UntilNode>) {
            return Formula::until(self(*n.left, modified, self),
                                  self(*n.right, modified, self), n.window);
          } else if constexpr (std::is_same_v<T, EventuallyNode>) {
            return Formula::eventually(self(*n.child, modified, self), n.window);
          } else {
            return Formula::always(self(*n.child, modified, self), n.window);
          }
        },
        g.node());
  };

  return {rewrite(f, false, rewrite), rewrite(f, true, rewrite)};
}

double robustness_bound_r(const std::vector<PredicateFunction>& preds,
                          const std::map<std::string, double>& c, double eps_r,
                          double alpha, const DomainBox& box, const GaussianVector& env,
                          double tol, std::map<std::string, double>* per_predicate) {
  if (eps_r < 0.0) throw Error("robustness bound: eps_r must be >= 0");
  if (!(alpha > 0.0)) throw Error("robustness bound: alpha must be > 0");
  double shift = eps_r / alpha;
  double r = std::numeric_limits<double>::infinity();

  for (const auto& pred : preds) {
    auto it = c.find(pred.id);
    if (it == c.end()) throw Error("robustness bound: no threshold for '" + pred.id + "'");
    double c_shifted = it->second + shift;

    // Relaxed spec still containing the shrunk set? Monotone in r_try.
    auto relaxed_holds = [&](double r_try) {
      RiskSpec spec = pred.spec;
      if (spec.kind == RiskSpec::Kind::Chance) {
        spec.delta = pred.spec.delta + r_try;
        if (spec.delta >= 1.0 || spec.delta <= 0.0) return spec.delta <= 0.0;
      } else {
        spec.gamma = pred.spec.gamma - r_try;
      }
      return check_inclusion(pred, spec, c_shifted, box, env).holds;
    };

    double lo = -1.0, hi;
    if (pred.spec.kind == RiskSpec::Kind::Chance) {
      hi = 1.0 - pred.spec.delta - 1e-9;
    } else {
      InclusionCheck base = check_inclusion(pred, pred.spec, c_shifted, box, env);
      hi = pred.spec.gamma - base.worst_value + 1.0;
    }
    if (!relaxed_holds(lo)) {
      // Even a heavily relaxed spec fails; the configured c is inconsistent.
      lo = -64.0;
      if (!relaxed_holds(lo)) throw Error("robustness bound: inclusion fails for '" + pred.id + "'");
    }
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (relaxed_holds(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (per_predicate != nullptr) (*per_predicate)[pred.id] = lo;
    r = std::min(r, lo);
  }
  return r;
}

std::map<std::string, double> DeterminizationResult::c_map() const {
  std::map<std::string, double> m;
  for (const auto& p : predicates) m[p.id] = p.c;
  return m;
}

std::map<std::string, double> DeterminizationResult::chi_map() const {
  std::map<std::string, double> m;
  for (const auto& p : predicates) m[p.id] = p.chi;
  return m;
}

const DeterminizationResult::PerPredicate& DeterminizationResult::at(
    const std::string& id) const {
  for (const auto& p : predicates) {
    if (p.id == id) return p;
  }
  throw Error("no determinization entry for predicate '" + id + "'");
}

DeterminizationResult run_determinization(const Formula& f, const PredicateTable& preds,
                                          const GaussianVector& env, const DomainBox& box,
                                          const DeterminizationOptions& opt) {
  DeterminizationResult result;
  auto order = predicates_of(f);

  for (const auto& id : order) {
    auto it = preds.find(id);
    if (it == preds.end()) throw Error("formula references unknown predicate '" + id + "'");
    const PredicateFunction& pred = it->second;
    pred.validate(env.dim());

    DeterminizationResult::PerPredicate entry;
    entry.id = id;
    entry.c = minimal_c(pred, pred.spec, box, env, opt.c_tol);
    // Nudge off the exact boundary so the certificate check is stable.
    entry.c += 1e-9;
    entry.cert = check_inclusion(pred, pred.spec, entry.c, box, env, opt.method);
    entry.slack = predicate_slack(pred, entry.c, 0.0, box, env.mean(), nullptr);
    entry.chi = opt.chi_fraction * std::max(0.0, entry.slack);
    result.predicates.push_back(std::move(entry));
  }

  result.assumption2_ok = true;
  for (const auto& p : result.predicates) result.assumption2_ok &= p.cert.holds;

  auto c_map = result.c_map();
  auto chi_map = result.chi_map();
  result.assumption1 =
      check_assumption1(conjunction_groups(f), preds, c_map, chi_map, box, env.mean());
  result.assumption1_ok = result.assumption1.ok;
  for (const auto& p : result.predicates) {
    if (!(p.chi > 0.0) || !(p.slack > 0.0)) result.assumption1_ok = false;
  }

  auto [phi, phi_bar] = determinize_formula(f, c_map, chi_map);
  result.phi = phi;
  result.phi_bar = phi_bar;
  return result;
}

}  // namespace ristl
