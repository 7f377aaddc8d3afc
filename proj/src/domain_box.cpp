#include "ristl/domain_box.hpp"

#include <cmath>

#include "ristl/common.hpp"

namespace ristl {

DomainBox::DomainBox(Eigen::VectorXd lo, Eigen::VectorXd up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw Error("domain box bounds must have matching nonzero dimension");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower(i) < upper(i))) {
      throw Error("domain box requires lower < upper componentwise");
    }
  }
}

bool DomainBox::contains(const Eigen::VectorXd& x, double tol) const {
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (x(i) < lower(i) - tol || x(i) > upper(i) + tol) return false;
  }
  return true;
}

Eigen::VectorXd DomainBox::clamp(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

double DomainBox::distance(const Eigen::VectorXd& x) const {
  return (x - clamp(x)).norm();
}

double DomainBox::max_vertex_distance(const Eigen::VectorXd& x) const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    double d = std::max(std::abs(x(i) - lower(i)), std::abs(x(i) - upper(i)));
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace ristl
