#pragma once

#include <Eigen/Dense>

namespace ristl {

/// The environment random vector X ~ N(mean, cov). cov must be symmetric
/// positive semidefinite; validity is established by a pivoted Cholesky
/// factorization, whose factor also serves as the sampling transform.
class GaussianVector {
 public:
  GaussianVector() = default;  // empty (dimension 0)
  GaussianVector(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  Eigen::Index dim() const { return mean_.size(); }

  /// A (possibly rank-deficient) matrix A with A A^T = cov.
  const Eigen::MatrixXd& transform() const { return transform_; }
  Eigen::Index rank() const { return transform_.cols(); }

  /// True when the 2x2 covariance block of coordinates (i, j) is sigma^2 I
  /// within tol; writes sigma if so.
  bool isotropic_block(Eigen::Index i, Eigen::Index j, double* sigma,
                       double tol = 1e-12) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd transform_;
};

}  // namespace ristl
