#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "ristl/determinize.hpp"
#include "ristl/domain_box.hpp"
#include "ristl/monitor.hpp"

namespace ristl {

/// One smooth-min term: a concave state function hbar(p) plus a nonincreasing
/// reach allowance offset(t) that hits zero at the component deadline.
/// Invariance components have gamma0 == 0 (offset identically zero).
struct BarrierComponent {
  enum class Kind { Affine, Ball };

  Kind kind = Kind::Affine;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();  // affine: a.p + b
  double b = 0.0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  // ball: radius - ||p - center||
  double radius = 0.0;

  double gamma0 = 0.0;  // initial reach allowance
  double t0 = 0.0;
  double t_star = 0.0;  // deadline; offset(t_star) = 0
  bool is_reach = false;
  std::string label;

  double hbar(const Eigen::Vector2d& p) const;
  Eigen::Vector2d grad(const Eigen::Vector2d& p) const;  // throws at a ball center
  double offset(double t) const;
  double offset_rate(double t) const;
  double value(const Eigen::Vector2d& p, double t) const { return hbar(p) + offset(t); }
};

/// Time-varying barrier b(p, t) = -(1/eta) ln sum_k exp(-eta (hbar_k(p) +
/// offset_k(t))), concave in p, piecewise continuous in t.
class BarrierFunction {
 public:
  BarrierFunction(std::vector<BarrierComponent> components, double eta, double t_begin,
                  double t_end);

  double eval(const Eigen::Vector2d& p, double t) const;
  Eigen::Vector2d grad_p(const Eigen::Vector2d& p, double t) const;
  double ddt(const Eigen::Vector2d& p, double t) const;

  /// Smooth-min under-approximation gap ln(K)/eta.
  double lse_slack() const;

  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  double eta() const { return eta_; }
  const std::vector<BarrierComponent>& components() const { return components_; }

  /// Raises the reach allowance of component index k to at least gamma0.
  void raise_reach_offset(std::size_t k, double gamma0);

  /// argmax of b(.,t) over the box (concave search); value written if asked.
  Eigen::Vector2d max_point(const DomainBox& box, double t, double* value) const;

  /// Smallest alpha (floored at 1) with alpha * b(p*,t) + ddt(p*,t) >= chi on
  /// a time grid over the active span. Throws when b(p*, t) <= 0 somewhere.
  double choose_alpha(const DomainBox& box, double safety_chi, int grid = 64) const;

 private:
  std::vector<BarrierComponent> components_;
  double eta_;
  double t_begin_;
  double t_end_;

  void check_span(double t) const;
};

/// Subtask shape: G_[t0, deadline] (invariant conj) and reach conj at the
/// deadline. The deadline is in global scenario time.
struct SubtaskSpec {
  std::vector<PredRef> invariant;
  std::vector<PredRef> reach;
  double deadline = 0.0;
};

/// Builds the subtask barrier at activation state p0/time t0. Invariance
/// members and the four domain-box faces enter with zero offset; reach
/// members get a linear allowance sized from their deficit at p0 (10%
/// inflation plus the smooth-min gap), optionally floored by reach_cover
/// (per-reach-member minimum of hbar over the incoming set, used to keep
/// switch containment). span_end extends evaluation beyond the deadline with
/// the allowance held at zero.
BarrierFunction build_barrier(const SubtaskSpec& subtask, const PredicateTable& preds,
                              const std::map<std::string, double>& c,
                              const std::map<std::string, double>& chi,
                              const Eigen::VectorXd& mu, const DomainBox& box,
                              const Eigen::Vector2d& p0, double t0, double eta,
                              double span_end = -1.0,
                              const std::vector<double>* reach_cover = nullptr);

/// Samples {b_prev(., s_j - 0) >= margin} on a grid and verifies
/// b_next(., s_j) >= 0 there. Returns false with a witness on failure.
bool check_switch_containment(const BarrierFunction& prev, const BarrierFunction& next,
                              double s_j, int samples_per_axis, const DomainBox& box,
                              double margin = 0.0, Eigen::Vector2d* witness = nullptr);

}  // namespace ristl
