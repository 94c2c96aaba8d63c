#include "stomps/analytic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "linalg.hpp"
#include "stomps/errors.hpp"

namespace stomps {

namespace {

// Bond states whose singular value falls below this fraction of the largest
// are exact linear dependences of the construction.
constexpr double kRankTolerance = 1e-14;

double step_weight(const Grid1D& grid, int k) { return grid.bit_weight(k); }

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::Index numerical_rank(const Eigen::VectorXd& s) {
  if (s.size() == 0 || s[0] == 0.0) return 0;
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > kRankTolerance * s[0]) ++r;
  return r;
}

}  // namespace

void TransferMatrixFamily::validate() const {
  const Eigen::Index chi = left.size();
  if (sites.empty()) throw PreconditionError("transfer-matrix family has no sites");
  if (chi == 0 || right.size() != chi) throw PreconditionError("boundary vectors do not match the bond dimension");
  for (const auto& t : sites)
    for (const auto& a : t)
      if (a.rows() != chi || a.cols() != chi)
        throw PreconditionError("transfer matrices must all be square of the bond dimension");
}

TransferMatrixFamily exp_family(double zeta, const Grid1D& grid) {
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  TransferMatrixFamily f;
  f.degree = 0;
  f.left = Eigen::RowVectorXd::Ones(1);
  f.right = Eigen::VectorXd::Ones(1);
  for (int k = 0; k < grid.n_qubits(); ++k) {
    SiteTensor t{Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Constant(1, 1, std::exp(-zeta * step_weight(grid, k)))};
    f.sites.push_back(std::move(t));
  }
  return f;
}

TransferMatrixFamily polynomial_family(const std::vector<double>& coefficients, double zeta, const Grid1D& grid) {
  if (coefficients.empty()) throw DomainError("polynomial needs at least one coefficient");
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  const int d = static_cast<int>(coefficients.size()) - 1;
  TransferMatrixFamily f;
  f.degree = d;
  f.left = Eigen::RowVectorXd::Zero(d + 1);
  f.left[0] = 1.0;
  f.right = Eigen::Map<const Eigen::VectorXd>(coefficients.data(), d + 1);
  for (int k = 0; k < grid.n_qubits(); ++k) {
    const double p = step_weight(grid, k);
    const double e = std::exp(-zeta * p);
    Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
      double binom = 1.0;
      for (int j = i; j <= d; ++j) {
        a1(i, j) = e * binom * std::pow(p, j - i);
        binom = binom * (j + 1) / (j + 1 - i);
      }
    }
    f.sites.push_back({Eigen::MatrixXd::Identity(d + 1, d + 1), std::move(a1)});
  }
  return f;
}

TransferMatrixFamily sto2s_family(double zeta, const Grid1D& grid) { return polynomial_family({0.0, 1.0}, zeta, grid); }

TransferMatrixFamily h2s_family(double a, const Grid1D& grid) {
  if (!(a > 0.0)) throw DomainError("a must be positive");
  TransferMatrixFamily f;
  f.degree = 2;
  f.left = Eigen::RowVector3d(2.0, 1.0, 0.0);
  f.right = Eigen::Vector3d(1.0, 0.0, 1.0);
  for (int k = 0; k < grid.n_qubits(); ++k) {
    const double p = step_weight(grid, k);
    Eigen::MatrixXd a1 = Eigen::MatrixXd::Identity(3, 3);
    a1(1, 2) = -p / a;
    a1 *= std::exp(-p / (2.0 * a));
    f.sites.push_back({Eigen::MatrixXd::Identity(3, 3), std::move(a1)});
  }
  return f;
}

TransferMatrixFamily h2s_jacobian_family(double a, const Grid1D& grid) {
  if (!(a > 0.0)) throw DomainError("a must be positive");
  TransferMatrixFamily f;
  f.degree = 2;
  f.left = Eigen::RowVector3d(1.0, 0.0, 0.0);
  f.right = Eigen::Vector3d(0.0, 2.0, -1.0 / a);
  for (int k = 0; k < grid.n_qubits(); ++k) {
    const double p = step_weight(grid, k);
    Eigen::MatrixXd a1(3, 3);
    a1 << 1.0, p, p * p, 0.0, 1.0, 2.0 * p, 0.0, 0.0, 1.0;
    a1 *= std::exp(-p / (2.0 * a));
    f.sites.push_back({Eigen::MatrixXd::Identity(3, 3), std::move(a1)});
  }
  return f;
}

TransferMatrixFamily sto1s_family(double zeta, std::uint64_t cusp_index, const Grid1D& grid, bool derivative) {
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  if (cusp_index >= grid.size())
    throw DomainError(fmt::format("cusp index {} outside [0, {})", cusp_index, grid.size()));
  const int n = grid.n_qubits();
  const double h = zeta * grid.spacing();
  enum { Tied = 0, Above = 1, Below = 2 };
  TransferMatrixFamily f;
  f.degree = 2;
  f.left = Eigen::RowVector3d(1.0, 0.0, 0.0);
  const double tail = std::exp(-h / 2);
  f.right = derivative ? Eigen::Vector3d(-zeta * tail, -zeta, zeta) : Eigen::Vector3d(tail, 1.0, 1.0);
  for (int k = 0; k < n; ++k) {
    const int shift = n - 1 - k;
    const auto p = static_cast<double>(std::uint64_t{1} << shift);
    const std::uint64_t c_bit = (cusp_index >> shift) & 1U;
    const auto c_low = static_cast<double>(cusp_index & ((std::uint64_t{1} << shift) - 1));
    SiteTensor t{Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 3)};
    t[c_bit](Tied, Tied) = 1.0;
    if (c_bit == 0)
      t[1](Tied, Above) = std::exp(-h * (p - c_low + 0.5));  // smallest index above: prefix|1|00..
    else
      t[0](Tied, Below) = std::exp(-h * (c_low + 0.5));  // largest index below: prefix|0|11..
    t[0](Above, Above) = 1.0;
    t[1](Above, Above) = std::exp(-h * p);
    t[0](Below, Below) = std::exp(-h * p);
    t[1](Below, Below) = 1.0;
    f.sites.push_back(std::move(t));
  }
  return f;
}

double norm_via_transfer(const TransferMatrixFamily& family) {
  family.validate();
  Eigen::RowVectorXd env = kron(family.left, family.left);
  double log_scale = 0.0;
  for (const auto& t : family.sites) {
    env = env * (kron(t[0], t[0]) + kron(t[1], t[1]));
    const double m = env.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    env /= m;
    log_scale += std::log(m);
  }
  const double tail = (env * kron(family.right, family.right))(0, 0);
  return std::exp(0.5 * (log_scale + std::log(tail)));
}

Mps to_mps(const TransferMatrixFamily& family) {
  family.validate();
  const std::size_t n = family.sites.size();
  std::vector<SiteTensor> b = family.sites;
  for (auto& a : b.front()) a = family.left * a;
  for (auto& a : b.back()) a = a * family.right;

  double log_norm = 0.0;
  // left sweep: remove bond states that are unreachable or duplicated
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Eigen::Index rows = b[k][0].rows();
    Eigen::MatrixXd m(2 * rows, b[k][0].cols());
    m << b[k][0], b[k][1];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index r = numerical_rank(svd.singularValues());
    if (r == 0) throw DomainError("transfer-matrix family encodes the zero function");
    const double top = svd.singularValues()[0];
    log_norm += std::log(top);
    const Eigen::MatrixXd u = svd.matrixU().leftCols(r);
    b[k][0] = u.topRows(rows);
    b[k][1] = u.bottomRows(rows);
    const Eigen::MatrixXd carry =
        (svd.singularValues().head(r) / top).asDiagonal() * svd.matrixV().leftCols(r).transpose();
    for (auto& a : b[k + 1]) a = carry * a;
  }
  // right sweep: right-canonical form with Schmidt-rank bonds
  for (std::size_t k = n - 1; k >= 1; --k) {
    const Eigen::Index cols = b[k][0].cols();
    Eigen::MatrixXd m(b[k][0].rows(), 2 * cols);
    m << b[k][0], b[k][1];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index r = numerical_rank(svd.singularValues());
    if (r == 0) throw DomainError("transfer-matrix family encodes the zero function");
    const Eigen::VectorXd s = svd.singularValues().head(r);
    const double sn = s.norm();
    log_norm += std::log(sn);
    const Eigen::MatrixXd vt = svd.matrixV().leftCols(r).transpose();
    b[k][0] = vt.leftCols(cols);
    b[k][1] = vt.rightCols(cols);
    const Eigen::MatrixXd carry = svd.matrixU().leftCols(r) * (s / sn).asDiagonal();
    for (auto& a : b[k - 1]) a = a * carry;
  }
  const double head = std::sqrt(b[0][0].squaredNorm() + b[0][1].squaredNorm());
  if (!(head > 0.0)) throw DomainError("transfer-matrix family encodes the zero function");
  for (auto& a : b[0]) a /= head;
  log_norm += std::log(head);

  Mps out;
  out.tensors = std::move(b);
  out.norm = std::exp(log_norm);
  out.threshold = 0.0;
  out.canonical = Canonical::RightCanonical;
  return out;
}

Mps build_exp(double zeta, const Grid1D& grid) { return to_mps(exp_family(zeta, grid)); }

Mps build_sto1s(double zeta, std::uint64_t cusp_index, const Grid1D& grid) {
  return to_mps(sto1s_family(zeta, cusp_index, grid, false));
}

Mps build_sto1s_derivative(double zeta, std::uint64_t cusp_index, const Grid1D& grid) {
  return to_mps(sto1s_family(zeta, cusp_index, grid, true));
}

Mps build_sto2s(double zeta, const Grid1D& grid) { return to_mps(sto2s_family(zeta, grid)); }

Mps build_h2s(double a, const Grid1D& grid) { return to_mps(h2s_family(a, grid)); }

Mps build_h2s_jacobian(double a, const Grid1D& grid) { return to_mps(h2s_jacobian_family(a, grid)); }

}  // namespace stomps
