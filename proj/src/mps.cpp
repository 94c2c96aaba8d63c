#include "stomps/mps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string_view>

#include <fmt/format.h>

#include "io_util.hpp"
#include "linalg.hpp"
#include "stomps/errors.hpp"

namespace stomps {

std::vector<int> Mps::bond_dims() const {
  std::vector<int> dims;
  if (tensors.empty()) return dims;
  dims.reserve(tensors.size() + 1);
  dims.push_back(static_cast<int>(tensors.front()[0].rows()));
  for (const auto& t : tensors) dims.push_back(static_cast<int>(t[0].cols()));
  return dims;
}

int Mps::chi_max() const {
  const auto dims = bond_dims();
  return dims.empty() ? 0 : *std::max_element(dims.begin(), dims.end());
}

double Mps::right_canonical_defect() const {
  double worst = 0.0;
  for (const auto& t : tensors) {
    Eigen::MatrixXd g = t[0] * t[0].transpose() + t[1] * t[1].transpose();
    g -= Eigen::MatrixXd::Identity(g.rows(), g.cols());
    worst = std::max(worst, g.cwiseAbs().maxCoeff());
  }
  return worst;
}

Mps decompose(const Eigen::VectorXd& v, double threshold, double norm) {
  if (threshold < 0.0 || !std::isfinite(threshold))
    throw DomainError(fmt::format("threshold must be a non-negative number, got {}", threshold));
  const auto size = static_cast<std::uint64_t>(v.size());
  if (size < 2 || (size & (size - 1)) != 0)
    throw PreconditionError(fmt::format("state length {} is not a power of two >= 2", size));
  const int n = std::countr_zero(size);
  if (n > kDenseQubitCeiling)
    throw ResourceLimitError(fmt::format("dense decomposition is limited to 2^{} amplitudes", kDenseQubitCeiling));
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw PreconditionError(fmt::format("state must have unit norm (|v| = {:.15g})", v.norm()));

  Mps out;
  out.tensors.resize(static_cast<std::size_t>(n));
  out.threshold = threshold;
  out.norm = norm;
  out.canonical = Canonical::RightCanonical;

  // M(r, s*chi + b): r = leading bits, s = current site bit, b = right bond
  Eigen::MatrixXd m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      v.data(), static_cast<Eigen::Index>(size / 2), 2);
  Eigen::Index chi_right = 1;
  for (int site = n - 1; site >= 1; --site) {
    const auto svd = detail::thin_svd(m);
    Eigen::Index keep = 0;
    while (keep < svd.s.size() && svd.s[keep] >= threshold) ++keep;
    keep = std::max<Eigen::Index>(keep, 1);
    out.truncation_weight += svd.s.tail(svd.s.size() - keep).squaredNorm();
    const double kept_norm = svd.s.head(keep).norm();

    SiteTensor& t = out.tensors[static_cast<std::size_t>(site)];
    for (int s = 0; s < 2; ++s) t[s] = svd.v.block(s * chi_right, 0, chi_right, keep).transpose();

    const Eigen::MatrixXd us = svd.us.leftCols(keep) / kept_norm;
    const Eigen::Index rows = m.rows() / 2;
    Eigen::MatrixXd next(rows, 2 * keep);
    for (Eigen::Index r = 0; r < rows; ++r) {
      next.block(r, 0, 1, keep) = us.row(2 * r);
      next.block(r, keep, 1, keep) = us.row(2 * r + 1);
    }
    m = std::move(next);
    chi_right = keep;
  }
  SiteTensor& first = out.tensors.front();
  for (int s = 0; s < 2; ++s) first[s] = m.block(0, s * chi_right, 1, chi_right);
  return out;
}

Mps decompose(const SampledState& state, double threshold) {
  return decompose(state.amplitudes, threshold, state.norm);
}

Eigen::VectorXd reconstruct(const Mps& mps) {
  const int n = mps.n_sites();
  if (n == 0) throw PreconditionError("empty MPS");
  if (n > kDenseQubitCeiling)
    throw ResourceLimitError(fmt::format("dense reconstruction is limited to 2^{} amplitudes", kDenseQubitCeiling));
  // rows index the bits seen so far, MSB first
  Eigen::MatrixXd acc(2, mps.tensors[0][0].cols());
  acc.row(0) = mps.tensors[0][0].row(0);
  acc.row(1) = mps.tensors[0][1].row(0);
  for (int i = 1; i < n; ++i) {
    const auto& t = mps.tensors[static_cast<std::size_t>(i)];
    Eigen::MatrixXd next(acc.rows() * 2, t[0].cols());
    const Eigen::MatrixXd p0 = acc * t[0];
    const Eigen::MatrixXd p1 = acc * t[1];
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      next.row(2 * r) = p0.row(r);
      next.row(2 * r + 1) = p1.row(r);
    }
    acc = std::move(next);
  }
  return acc.col(0);
}

double inner_product(const Mps& a, const Mps& b) {
  if (a.n_sites() != b.n_sites() || a.n_sites() == 0)
    throw PreconditionError(fmt::format("inner product of MPS with {} and {} sites", a.n_sites(), b.n_sites()));
  Eigen::MatrixXd env = Eigen::MatrixXd::Ones(1, 1);
  for (int i = 0; i < a.n_sites(); ++i) {
    const auto& ta = a.tensors[static_cast<std::size_t>(i)];
    const auto& tb = b.tensors[static_cast<std::size_t>(i)];
    if (ta[0].rows() != env.rows() || tb[0].rows() != env.cols())
      throw PreconditionError(fmt::format("bond mismatch at site {}", i));
    env = ta[0].transpose() * env * tb[0] + ta[1].transpose() * env * tb[1];
  }
  return env(0, 0);
}

BondProfile bond_profile(const Mps& mps) {
  BondProfile p;
  const auto dims = mps.bond_dims();
  if (dims.size() > 2) p.dims.assign(dims.begin() + 1, dims.end() - 1);
  p.max_dim = p.dims.empty() ? 1 : *std::max_element(p.dims.begin(), p.dims.end());
  return p;
}

BondProfile bond_profile(const Mps& mps, const Grid3D& grid) {
  if (mps.n_sites() != grid.n_total())
    throw PreconditionError(fmt::format("MPS has {} sites, grid has {} qubits", mps.n_sites(), grid.n_total()));
  BondProfile p = bond_profile(mps);
  if (grid.ordering() == Ordering::Grouped) {
    const int n = grid.n_per_coord();
    p.chi_xy = p.dims[static_cast<std::size_t>(n - 1)];
    p.chi_yz = p.dims[static_cast<std::size_t>(2 * n - 1)];
  }
  return p;
}

Eigen::VectorXd cut_singular_values(const Eigen::VectorXd& state, int cut) {
  const auto size = static_cast<std::uint64_t>(state.size());
  if (size < 2 || (size & (size - 1)) != 0) throw PreconditionError("state length is not a power of two");
  const int n = std::countr_zero(size);
  if (cut <= 0 || cut >= n) throw DomainError(fmt::format("cut {} outside (0, {})", cut, n));
  // column-major view of the row-major (2^cut x 2^{n-cut}) reshape is its transpose
  const Eigen::Map<const Eigen::MatrixXd> mt(state.data(), Eigen::Index{1} << (n - cut), Eigen::Index{1} << cut);
  return detail::singular_values(mt);
}

int schmidt_rank(const Eigen::VectorXd& state, int cut, double threshold) {
  const Eigen::VectorXd s = cut_singular_values(state, cut);
  return static_cast<int>((s.array() >= threshold).count());
}

nlohmann::json summary_json(const Mps& mps) {
  return {{"n_sites", mps.n_sites()},
          {"bond_dims", mps.bond_dims()},
          {"chi_max", mps.chi_max()},
          {"threshold", mps.threshold},
          {"norm", mps.norm},
          {"truncation_weight", mps.truncation_weight},
          {"canonical", mps.canonical == Canonical::RightCanonical ? "right" : "none"}};
}

nlohmann::json to_json(const BondProfile& p) {
  nlohmann::json j = {{"dims", p.dims}, {"max_dim", p.max_dim}};
  j["chi_xy"] = p.chi_xy ? nlohmann::json(*p.chi_xy) : nlohmann::json(nullptr);
  j["chi_yz"] = p.chi_yz ? nlohmann::json(*p.chi_yz) : nlohmann::json(nullptr);
  return j;
}

namespace {
constexpr std::string_view kMagic = "STMPS001";
}

void write_binary(const Mps& mps, const std::filesystem::path& path) {
  auto os = detail::open_out(path, true);
  os.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(mps.n_sites()));
  detail::put<double>(os, mps.threshold);
  detail::put<double>(os, mps.norm);
  detail::put<double>(os, mps.truncation_weight);
  detail::put<std::uint8_t>(os, mps.canonical == Canonical::RightCanonical ? 1 : 0);
  for (const auto& t : mps.tensors) {
    detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(t[0].rows()));
    detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(t[0].cols()));
    for (const auto& a : t)
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) detail::put<double>(os, a(r, c));
  }
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

Mps read_binary_mps(const std::filesystem::path& path) {
  auto is = detail::open_in(path, true);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::string_view(magic, 8) != kMagic)
    throw IoError(fmt::format("'{}' is not an MPS container", path.string()));
  Mps m;
  const auto n = detail::get<std::uint64_t>(is);
  if (n == 0 || n > 64) throw IoError(fmt::format("'{}': implausible site count {}", path.string(), n));
  m.threshold = detail::get<double>(is);
  m.norm = detail::get<double>(is);
  m.truncation_weight = detail::get<double>(is);
  m.canonical = detail::get<std::uint8_t>(is) ? Canonical::RightCanonical : Canonical::NonCanonical;
  m.tensors.resize(n);
  for (auto& t : m.tensors) {
    const auto rows = detail::get<std::uint64_t>(is);
    const auto cols = detail::get<std::uint64_t>(is);
    if (rows == 0 || cols == 0 || rows > (1U << 20) || cols > (1U << 20))
      throw IoError(fmt::format("'{}': implausible tensor shape", path.string()));
    for (auto& a : t) {
      a.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = detail::get<double>(is);
    }
  }
  return m;
}

}  // namespace stomps
