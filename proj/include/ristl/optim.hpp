#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ristl/domain_box.hpp"

namespace ristl {

/// Maximizes a concave objective over an axis-aligned box: coarse grid for
/// dimensions <= 2, then compass-search refinement from the incumbent.
Eigen::VectorXd maximize_over_box(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const DomainBox& box, double* best_value);

}  // namespace ristl
