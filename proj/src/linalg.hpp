#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace stomps::detail {

struct ThinSvd {
  Eigen::VectorXd s;   // descending
  Eigen::MatrixXd v;   // right singular vectors as columns
  Eigen::MatrixXd us;  // U * diag(s)
};

// One-sided Jacobi is used up to this width; it resolves small singular values
// to high relative accuracy, which the absolute truncation rule depends on.
inline constexpr Eigen::Index kJacobiLimit = 384;

/// Tall inputs are reduced by Householder QR first, so only a square
/// triangular factor goes through the SVD.
ThinSvd thin_svd(const Eigen::MatrixXd& m);

Eigen::VectorXd singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace stomps::detail
