#include "ristl/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ristl/common.hpp"

namespace ristl {

namespace {

// Pivoted Cholesky of a symmetric PSD matrix: P S P^T = L L^T with L lower
// triangular of rank r. Throws if a pivot is negative beyond tolerance.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& s) {
  const Eigen::Index n = s.rows();
  Eigen::MatrixXd a = s;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::Index> perm(n);
  for (Eigen::Index i = 0; i < n; ++i) perm[i] = i;

  const double tol = 1e-12 * std::max(1.0, s.diagonal().cwiseAbs().maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      if (a(j, j) > a(piv, piv)) piv = j;
    }
    if (a(piv, piv) < -tol) throw Error("covariance is not positive semidefinite");
    if (a(piv, piv) <= tol) break;  // remaining block is numerically zero
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      a.col(k).swap(a.col(piv));
      l.row(k).swap(l.row(piv));
      std::swap(perm[k], perm[piv]);
    }
    double d = std::sqrt(a(k, k));
    l(k, k) = d;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      l(j, k) = a(j, k) / d;
    }
    for (Eigen::Index j = k + 1; j < n; ++j) {
      for (Eigen::Index i = j; i < n; ++i) {
        a(i, j) -= l(i, k) * l(j, k);
      }
      a.row(j).tail(n - j) = a.col(j).tail(n - j).transpose();
    }
    ++rank;
  }

  // Undo the permutation: rows of L back in original order.
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.row(perm[i]) = l.row(i).head(rank);
  }
  return out;
}

}  // namespace

GaussianVector::GaussianVector(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != cov_.cols() || cov_.rows() != mean_.size()) {
    throw Error("covariance dimensions do not match the mean");
  }
  double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error("covariance is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose().eval());
  transform_ = psd_factor(cov_);
}

bool GaussianVector::isotropic_block(Eigen::Index i, Eigen::Index j, double* sigma,
                                     double tol) const {
  if (i < 0 || j < 0 || i >= dim() || j >= dim() || i == j) return false;
  double vii = cov_(i, i), vjj = cov_(j, j), vij = cov_(i, j);
  double scale = std::max({1.0, vii, vjj});
  if (std::abs(vii - vjj) > tol * scale || std::abs(vij) > tol * scale) return false;
  if (sigma != nullptr) *sigma = std::sqrt(std::max(0.0, vii));
  return true;
}

}  // namespace ristl
