#include "stomps/grid.hpp"

#include <cmath>

#include <fmt/format.h>

#include "stomps/errors.hpp"

namespace stomps {

std::string to_string(Ordering ordering) {
  return ordering == Ordering::Grouped ? "grouped" : "interleaved";
}

Ordering ordering_from_string(const std::string& name) {
  if (name == "grouped") return Ordering::Grouped;
  if (name == "interleaved") return Ordering::Interleaved;
  throw DomainError(fmt::format("unknown ordering '{}' (expected grouped or interleaved)", name));
}

Grid1D::Grid1D(int n_qubits, double length, double origin)
    : n_qubits_(n_qubits), length_(length), origin_(origin) {
  if (n_qubits < 1 || n_qubits > 30)
    throw DomainError(fmt::format("n_qubits must lie in [1, 30], got {}", n_qubits));
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError(fmt::format("grid length must be positive, got {}", length));
  if (!std::isfinite(origin)) throw DomainError("grid origin must be finite");
  spacing_ = length / std::ldexp(1.0, n_qubits);
}

double Grid1D::bit_weight(int k) const {
  if (k < 0 || k >= n_qubits_) throw DomainError(fmt::format("bit {} out of range", k));
  return std::ldexp(spacing_, n_qubits_ - 1 - k);
}

double BitDecomposition::offset() const {
  double x = 0.0;
  for (std::size_t k = 0; k < bits.size(); ++k) x += bits[k] * weights[k];
  return x;
}

BitDecomposition decompose_index(std::uint64_t j, const Grid1D& grid) {
  if (j >= grid.size()) throw DomainError(fmt::format("index {} outside grid of {} points", j, grid.size()));
  const int n = grid.n_qubits();
  BitDecomposition out;
  out.bits.resize(n);
  out.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    out.bits[k] = static_cast<int>((j >> (n - 1 - k)) & 1U);
    out.weights[k] = grid.bit_weight(k);
  }
  return out;
}

SnappedPoint snap_to_grid(double value, const Grid1D& grid) {
  const double lo = grid.origin();
  const double hi = grid.origin() + grid.length();
  if (!(value >= lo && value < hi))
    throw DomainError(fmt::format("coordinate {} outside grid domain [{}, {})", value, lo, hi));
  const double t = (value - lo) / grid.spacing();
  auto below = static_cast<std::uint64_t>(std::floor(t));
  if (below >= grid.size()) below = grid.size() - 1;
  std::uint64_t idx = below;
  // ties resolve to the lower index
  if (below + 1 < grid.size() && (t - static_cast<double>(below)) > 0.5) idx = below + 1;
  return {idx, grid.point(idx)};
}

Grid3D::Grid3D(Grid1D per_coord, Ordering ordering) : per_coord_(per_coord), ordering_(ordering) {
  if (per_coord.n_qubits() > 10)
    throw DomainError(fmt::format("3D grids support at most 10 qubits per coordinate, got {}",
                                  per_coord.n_qubits()));
}

std::uint64_t Grid3D::flatten_index(std::uint64_t jx, std::uint64_t jy, std::uint64_t jz) const {
  const std::uint64_t m = per_coord_.size();
  if (jx >= m || jy >= m || jz >= m)
    throw DomainError(fmt::format("3D index ({}, {}, {}) out of range for {} points per coordinate",
                                  jx, jy, jz, m));
  const int n = n_per_coord();
  if (ordering_ == Ordering::Grouped) return (jx << (2 * n)) | (jy << n) | jz;
  std::uint64_t flat = 0;
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;
    flat = (flat << 3) | (((jx >> src) & 1U) << 2) | (((jy >> src) & 1U) << 1) | ((jz >> src) & 1U);
  }
  return flat;
}

std::array<std::uint64_t, 3> Grid3D::unflatten_index(std::uint64_t flat) const {
  if (flat >= size()) throw DomainError(fmt::format("flat index {} out of range", flat));
  const int n = n_per_coord();
  const std::uint64_t mask = per_coord_.size() - 1;
  if (ordering_ == Ordering::Grouped) return {(flat >> (2 * n)) & mask, (flat >> n) & mask, flat & mask};
  std::array<std::uint64_t, 3> j{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    const std::uint64_t triple = (flat >> (3 * (n - 1 - k))) & 7U;
    j[0] = (j[0] << 1) | (triple >> 2);
    j[1] = (j[1] << 1) | ((triple >> 1) & 1U);
    j[2] = (j[2] << 1) | (triple & 1U);
  }
  return j;
}

std::array<double, 3> Grid3D::point(std::uint64_t flat) const {
  const auto j = unflatten_index(flat);
  return {per_coord_.point(j[0]), per_coord_.point(j[1]), per_coord_.point(j[2])};
}

double cusp_coordinate(std::uint64_t cusp_index, const Grid1D& grid) {
  return grid.origin() + (static_cast<double>(cusp_index) - 0.5) * grid.spacing();
}

TwoCenterPlacement place_two_centers(double distance, const Grid1D& grid) {
  if (distance < 0.0) throw DomainError("center distance must be non-negative");
  if (distance >= grid.length())
    throw DomainError(fmt::format("distance {} does not fit in a box of length {}", distance, grid.length()));
  const std::uint64_t steps = snap_to_grid(grid.origin() + distance, grid).index;
  const std::uint64_t half = grid.size() / 2;
  if (steps / 2 > half || half - steps / 2 + steps >= grid.size())
    throw DomainError(fmt::format("distance {} leaves no room for both centers on {} points", distance,
                                  grid.size()));
  TwoCenterPlacement p{};
  p.steps = steps;
  p.cusp_a = half - steps / 2;
  p.cusp_b = p.cusp_a + steps;
  p.snapped_distance = static_cast<double>(steps) * grid.spacing();
  p.center_a = cusp_coordinate(p.cusp_a, grid);
  p.center_b = cusp_coordinate(p.cusp_b, grid);
  return p;
}

nlohmann::json to_json(const Grid1D& grid) {
  return {{"n_qubits", grid.n_qubits()},
          {"length", grid.length()},
          {"origin", grid.origin()},
          {"ordering", nullptr}};
}

nlohmann::json to_json(const Grid3D& grid) {
  const auto& g = grid.per_coord();
  return {{"n_qubits", g.n_qubits()},
          {"length", g.length()},
          {"origin", g.origin()},
          {"ordering", to_string(grid.ordering())}};
}

Grid1D grid1d_from_json(const nlohmann::json& j) {
  try {
    return Grid1D(j.at("n_qubits").get<int>(), j.at("length").get<double>(), j.value("origin", 0.0));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed grid JSON: {}", e.what()));
  }
}

Grid3D grid3d_from_json(const nlohmann::json& j) {
  const Grid1D g = grid1d_from_json(j);
  try {
    const auto& ord = j.at("ordering");
    if (ord.is_null()) throw IoError("3D grid JSON requires an ordering");
    return Grid3D(g, ordering_from_string(ord.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed grid JSON: {}", e.what()));
  }
}

}  // namespace stomps
