#include "ristl/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ristl/common.hpp"
#include "ristl/optim.hpp"

namespace ristl {

double BarrierComponent::hbar(const Eigen::Vector2d& p) const {
  if (kind == Kind::Affine) return a.dot(p) + b;
  return radius - (p - center).norm();
}

Eigen::Vector2d BarrierComponent::grad(const Eigen::Vector2d& p) const {
  if (kind == Kind::Affine) return a;
  Eigen::Vector2d d = p - center;
  double n = d.norm();
  if (n < 1e-14) {
    throw Error("barrier gradient undefined at the center of component '" + label + "'");
  }
  return -d / n;
}

double BarrierComponent::offset(double t) const {
  if (gamma0 == 0.0) return 0.0;
  double span = t_star - t0;
  if (span <= 0.0 || t >= t_star) return 0.0;
  if (t <= t0) return gamma0;
  return gamma0 * (1.0 - (t - t0) / span);
}

double BarrierComponent::offset_rate(double t) const {
  if (gamma0 == 0.0) return 0.0;
  double span = t_star - t0;
  if (span <= 0.0 || t >= t_star || t < t0) return 0.0;
  return -gamma0 / span;
}

BarrierFunction::BarrierFunction(std::vector<BarrierComponent> components, double eta,
                                 double t_begin, double t_end)
    : components_(std::move(components)), eta_(eta), t_begin_(t_begin), t_end_(t_end) {
  if (components_.empty()) throw Error("barrier needs at least one component");
  if (!(eta_ > 0.0)) throw Error("barrier smooth-min sharpness eta must be > 0");
  if (!(t_end_ > t_begin_)) throw Error("barrier span must have positive length");
}

void BarrierFunction::check_span(double t) const {
  if (t < t_begin_ - 1e-9 || t > t_end_ + 1e-9) {
    throw Error("barrier evaluated outside its active span [" +
                std::to_string(t_begin_) + ", " + std::to_string(t_end_) + "] at t=" +
                std::to_string(t));
  }
}

double BarrierFunction::lse_slack() const {
  return std::log(static_cast<double>(components_.size())) / eta_;
}

double BarrierFunction::eval(const Eigen::Vector2d& p, double t) const {
  check_span(t);
  double vmin = std::numeric_limits<double>::infinity();
  for (const auto& comp : components_) vmin = std::min(vmin, comp.value(p, t));
  double acc = 0.0;
  for (const auto& comp : components_) {
    acc += std::exp(-eta_ * (comp.value(p, t) - vmin));
  }
  return vmin - std::log(acc) / eta_;
}

Eigen::Vector2d BarrierFunction::grad_p(const Eigen::Vector2d& p, double t) const {
  check_span(t);
  double vmin = std::numeric_limits<double>::infinity();
  for (const auto& comp : components_) vmin = std::min(vmin, comp.value(p, t));
  double acc = 0.0;
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (const auto& comp : components_) {
    double w = std::exp(-eta_ * (comp.value(p, t) - vmin));
    acc += w;
    g += w * comp.grad(p);
  }
  return g / acc;
}

double BarrierFunction::ddt(const Eigen::Vector2d& p, double t) const {
  check_span(t);
  double vmin = std::numeric_limits<double>::infinity();
  for (const auto& comp : components_) vmin = std::min(vmin, comp.value(p, t));
  double acc = 0.0;
  double rate = 0.0;
  for (const auto& comp : components_) {
    double w = std::exp(-eta_ * (comp.value(p, t) - vmin));
    acc += w;
    rate += w * comp.offset_rate(t);
  }
  return rate / acc;
}

void BarrierFunction::raise_reach_offset(std::size_t k, double gamma0) {
  if (k >= components_.size()) throw Error("barrier component index out of range");
  auto& comp = components_[k];
  if (!comp.is_reach) throw Error("component '" + comp.label + "' has no reach allowance");
  comp.gamma0 = std::max(comp.gamma0, gamma0);
}

Eigen::Vector2d BarrierFunction::max_point(const DomainBox& box, double t,
                                           double* value) const {
  auto objective = [&](const Eigen::VectorXd& x) {
    return eval(Eigen::Vector2d(x(0), x(1)), t);
  };
  Eigen::VectorXd p = maximize_over_box(objective, box, value);
  return {p(0), p(1)};
}

double BarrierFunction::choose_alpha(const DomainBox& box, double safety_chi,
                                     int grid) const {
  double alpha = 1.0;
  for (int i = 0; i <= grid; ++i) {
    double t = t_begin_ + (t_end_ - t_begin_) * i / grid;
    double bval = 0.0;
    Eigen::Vector2d p_star = max_point(box, t, &bval);
    if (!(bval > 0.0)) {
      throw Error("barrier has empty interior at t=" + std::to_string(t) +
                  " (max value " + std::to_string(bval) + ")");
    }
    double rate;
    try {
      rate = ddt(p_star, t);
    } catch (const Error&) {
      rate = ddt(p_star + Eigen::Vector2d(1e-9, 1e-9), t);
    }
    alpha = std::max(alpha, (safety_chi - rate) / bval);
  }
  return alpha;
}

bool check_switch_containment(const BarrierFunction& prev, const BarrierFunction& next,
                              double s_j, int samples_per_axis, const DomainBox& box,
                              double margin, Eigen::Vector2d* witness) {
  double t_prev = std::min(s_j - 1e-9, prev.t_end());
  int g = std::max(2, samples_per_axis);
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g; ++j) {
      Eigen::Vector2d p(box.lower(0) + (box.upper(0) - box.lower(0)) * i / g,
                        box.lower(1) + (box.upper(1) - box.lower(1)) * j / g);
      if (prev.eval(p, t_prev) < margin) continue;
      if (next.eval(p, s_j) < 0.0) {
        if (witness != nullptr) *witness = p;
        return false;
      }
    }
  }
  return true;
}

namespace {

BarrierComponent component_from(const PredicateFunction& pred, const PredRef& ref,
                                double c, double chi, const Eigen::VectorXd& mu) {
  BarrierComponent comp;
  comp.label = ref.describe();
  if (pred.is_affine()) {
    const auto& f = pred.affine();
    if (f.v.size() != 2) {
      throw Error("barrier components need 2-D state predicates ('" + pred.id + "')");
    }
    double k = f.w.dot(mu) + f.b0;
    comp.kind = BarrierComponent::Kind::Affine;
    if (!ref.negated) {
      comp.a = Eigen::Vector2d(f.v(0), f.v(1));
      comp.b = k - c - chi;
    } else {
      comp.a = Eigen::Vector2d(-f.v(0), -f.v(1));
      comp.b = -(k - c) - chi;
    }
  } else {
    if (ref.negated) {
      throw Error("negated norm-ball predicate '" + pred.id + "' is not concave");
    }
    const auto& f = pred.ball();
    comp.kind = BarrierComponent::Kind::Ball;
    comp.center = Eigen::Vector2d(mu(f.sel_i), mu(f.sel_j));
    comp.radius = f.epsilon - c - chi;
  }
  return comp;
}

}  // namespace

BarrierFunction build_barrier(const SubtaskSpec& subtask, const PredicateTable& preds,
                              const std::map<std::string, double>& c,
                              const std::map<std::string, double>& chi,
                              const Eigen::VectorXd& mu, const DomainBox& box,
                              const Eigen::Vector2d& p0, double t0, double eta,
                              double span_end, const std::vector<double>* reach_cover) {
  if (!(subtask.deadline > t0)) {
    throw Error("subtask deadline must lie strictly after the activation time");
  }
  if (reach_cover != nullptr && reach_cover->size() != subtask.reach.size()) {
    throw Error("reach_cover size mismatch");
  }

  auto threshold = [&](const std::string& id) -> std::pair<double, double> {
    auto ic = c.find(id);
    auto ix = chi.find(id);
    if (ic == c.end() || ix == chi.end()) {
      throw Error("build_barrier: missing threshold for predicate '" + id + "'");
    }
    return {ic->second, ix->second};
  };
  auto lookup = [&](const std::string& id) -> const PredicateFunction& {
    auto it = preds.find(id);
    if (it == preds.end()) throw Error("build_barrier: unknown predicate '" + id + "'");
    return it->second;
  };

  std::vector<BarrierComponent> comps;

  for (const auto& ref : subtask.invariant) {
    auto [cm, xm] = threshold(ref.id);
    comps.push_back(component_from(lookup(ref.id), ref, cm, xm, mu));
  }
  // Domain-box faces keep the zero-superlevel set bounded.
  for (int i = 0; i < 2; ++i) {
    BarrierComponent lo, hi;
    lo.kind = BarrierComponent::Kind::Affine;
    lo.a = Eigen::Vector2d::Zero();
    lo.a(i) = 1.0;
    lo.b = -box.lower(i);
    lo.label = "box_lo" + std::to_string(i);
    hi.kind = BarrierComponent::Kind::Affine;
    hi.a = Eigen::Vector2d::Zero();
    hi.a(i) = -1.0;
    hi.b = box.upper(i);
    hi.label = "box_hi" + std::to_string(i);
    comps.push_back(lo);
    comps.push_back(hi);
  }

  const double slack = std::log(static_cast<double>(comps.size() + subtask.reach.size() +
                                                    1)) /
                       eta;

  // Activation feasibility: the invariant part must hold strictly at p0,
  // with room for the smooth-min gap.
  for (const auto& comp : comps) {
    if (comp.hbar(p0) <= slack) {
      throw Error("infeasible activation: invariant component '" + comp.label +
                  "' is " + std::to_string(comp.hbar(p0)) + " at the start state");
    }
  }

  std::size_t reach_begin = comps.size();
  for (std::size_t k = 0; k < subtask.reach.size(); ++k) {
    const auto& ref = subtask.reach[k];
    auto [cm, xm] = threshold(ref.id);
    BarrierComponent comp = component_from(lookup(ref.id), ref, cm, xm, mu);
    comp.is_reach = true;
    comp.t0 = t0;
    comp.t_star = subtask.deadline;
    double deficit = std::max(0.0, -comp.hbar(p0));
    if (reach_cover != nullptr) {
      deficit = std::max(deficit, std::max(0.0, -(*reach_cover)[k]));
    }
    comp.gamma0 = deficit > 0.0 ? 1.1 * deficit + slack + 0.01 : 0.0;
    comps.push_back(std::move(comp));
  }

  double end = span_end > subtask.deadline ? span_end : subtask.deadline;
  BarrierFunction barrier(std::move(comps), eta, t0, end);

  // The inflation above already guarantees b(p0, t0) >= 0; re-check and bump
  // the reach allowances if numerical slack ate the margin.
  for (int attempt = 0; attempt < 32 && barrier.eval(p0, t0) < 0.0; ++attempt) {
    double need = -barrier.eval(p0, t0) + 0.01;
    for (std::size_t k = reach_begin; k < barrier.components().size(); ++k) {
      barrier.raise_reach_offset(k, barrier.components()[k].gamma0 + need);
    }
  }
  if (barrier.eval(p0, t0) < 0.0) {
    throw Error("infeasible activation: no reach allowance makes b(p0, t0) >= 0");
  }
  return barrier;
}

}  // namespace ristl
