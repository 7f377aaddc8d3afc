#pragma once

#include <Eigen/Dense>

namespace ristl {

/// Axis-aligned realization of the compact convex working set.
struct DomainBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  DomainBox(Eigen::VectorXd lo, Eigen::VectorXd up);

  Eigen::Index dim() const { return lower.size(); }
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;

  /// Distance from x to the box (0 when inside).
  double distance(const Eigen::VectorXd& x) const;

  /// Largest distance from x to any box vertex.
  double max_vertex_distance(const Eigen::VectorXd& x) const;
};

}  // namespace ristl
