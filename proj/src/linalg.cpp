#include "linalg.hpp"

#include <algorithm>

namespace stomps::detail {

namespace {

template <class Svd>
ThinSvd from_svd(const Svd& svd, const Eigen::MatrixXd& m, bool have_u) {
  ThinSvd out;
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  if (have_u)
    out.us = svd.matrixU() * out.s.asDiagonal();
  else
    out.us = m * out.v;
  return out;
}

ThinSvd square_or_wide(const Eigen::MatrixXd& m, const Eigen::MatrixXd& original, bool have_u) {
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return from_svd(svd, original, have_u);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return from_svd(svd, original, have_u);
}

}  // namespace

ThinSvd thin_svd(const Eigen::MatrixXd& m) {
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd r =
        qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
    // U of the full matrix is Q * U_r; M * V gives U * S without forming Q
    return square_or_wide(r, m, false);
  }
  return square_or_wide(m, m, true);
}

Eigen::VectorXd singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::MatrixXd work = m;
  if (work.rows() > work.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(work);
    work = qr.matrixQR().topRows(work.cols()).template triangularView<Eigen::Upper>();
  } else if (work.cols() > work.rows()) {
    Eigen::MatrixXd t = work.transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(t);
    work = qr.matrixQR().topRows(t.cols()).template triangularView<Eigen::Upper>();
  }
  if (work.rows() <= kJacobiLimit) return Eigen::JacobiSVD<Eigen::MatrixXd>(work).singularValues();
  return Eigen::BDCSVD<Eigen::MatrixXd>(work).singularValues();
}

}  // namespace stomps::detail
