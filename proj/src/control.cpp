#include "ristl/control.hpp"

#include <cmath>

#include "ristl/common.hpp"

namespace ristl {

namespace {
constexpr double kZeroGrad = 1e-10;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta + M_PI, 2.0 * M_PI);
  if (t <= 0.0) t += 2.0 * M_PI;
  return t - M_PI;
}

Eigen::Vector2d diffeo(const UnicycleState& z, double l) {
  if (!(l > 0.0)) throw Error("diffeomorphism offset l must be > 0");
  return z.x + l * Eigen::Vector2d(std::cos(z.theta), std::sin(z.theta));
}

Eigen::Matrix2d g_p_matrix(double theta, double l) {
  if (!(l > 0.0)) throw Error("diffeomorphism offset l must be > 0");
  Eigen::Matrix2d g;
  g << std::cos(theta), -l * std::sin(theta), std::sin(theta), l * std::cos(theta);
  return g;
}

ControlOutput min_norm_control(const Eigen::Vector2d& a, double d, double b_val,
                               double grad_norm, double alpha, double C) {
  double q = -alpha * b_val + grad_norm * C - d;
  ControlOutput out;
  double a2 = a.squaredNorm();
  if (std::sqrt(a2) < kZeroGrad) {
    if (q > 0.0) {
      throw Error("min-norm QP infeasible: zero input direction with q=" +
                  std::to_string(q) + " (alpha too small)");
    }
    out.u.setZero();
    out.constraint_residual = -q;
    return out;
  }
  if (q <= 0.0) {
    out.u.setZero();
    out.constraint_residual = -q;
    return out;
  }
  out.u = (q / a2) * a;
  out.constraint_residual = a.dot(out.u) - q;
  return out;
}

ControlOutput slack_control(const Eigen::Vector2d& a, double d, double b_val,
                            double grad_norm, double alpha, double C) {
  double q = -alpha * b_val + grad_norm * C - d;
  ControlOutput out;
  double a2 = a.squaredNorm();
  if (std::sqrt(a2) < kZeroGrad) {
    out.u.setZero();
    out.epsilon = std::max(0.0, -q);
    out.constraint_residual = -out.epsilon - q;
    return out;
  }
  // KKT: the constraint is active; eps = a.a/2 - q unless the eps >= 0 bound
  // binds, in which case the problem reduces to the min-norm law.
  double eps = 0.5 * a2 - q;
  if (eps >= 0.0) {
    out.u = 0.5 * a;
    out.epsilon = eps;
  } else {
    out.u = (std::max(0.0, q) / a2) * a;
    out.epsilon = 0.0;
  }
  out.constraint_residual = a.dot(out.u) - out.epsilon - q;
  return out;
}

}  // namespace ristl
