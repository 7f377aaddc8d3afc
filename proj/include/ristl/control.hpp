#pragma once

#include <Eigen/Dense>

namespace ristl {

/// Unicycle pose; theta wraps to (-pi, pi].
struct UnicycleState {
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  double theta = 0.0;
};

double wrap_angle(double theta);

/// Near-identity diffeomorphism p = x + l R(theta) e1.
Eigen::Vector2d diffeo(const UnicycleState& z, double l);

/// Input matrix of the transformed point dynamics; det = l.
Eigen::Matrix2d g_p_matrix(double theta, double l);

struct ControlOutput {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  double epsilon = 0.0;             // slack law only
  double constraint_residual = 0.0; // >= 0 when the barrier constraint holds
};

/// argmin u.u subject to a.u >= q with q = -alpha b + ||grad|| C - d.
/// a == 0 with q > 0 signals a misconfigured alpha and throws.
ControlOutput min_norm_control(const Eigen::Vector2d& a, double d, double b_val,
                               double grad_norm, double alpha, double C);

/// argmin u.u - eps subject to a.u - eps >= q, eps >= 0 (always feasible for
/// a != 0; a == 0 returns u = 0, eps = max(0, -q)).
ControlOutput slack_control(const Eigen::Vector2d& a, double d, double b_val,
                            double grad_norm, double alpha, double C);

}  // namespace ristl
