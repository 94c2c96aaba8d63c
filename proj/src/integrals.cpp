#include "stomps/integrals.hpp"

#include <cmath>

#include <fmt/format.h>

#include "stomps/analytic.hpp"
#include "stomps/circuit.hpp"
#include "stomps/errors.hpp"
#include "stomps/mps.hpp"
#include "stomps/parallel.hpp"

namespace stomps {

namespace {

double amplitude_overlap(const Mps& a, const Mps& b, Path via, std::uint64_t seed) {
  if (via == Path::Tensor) return inner_product(a, b);
  return compute_uncompute(compile(a, seed), compile(b, seed + 1)).signed_amplitude;
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

std::string to_string(Path path) { return path == Path::Tensor ? "tensor" : "circuit"; }

Path path_from_string(const std::string& name) {
  if (name == "tensor") return Path::Tensor;
  if (name == "circuit") return Path::Circuit;
  throw DomainError(fmt::format("unknown evaluation path '{}' (expected tensor or circuit)", name));
}

void IntegralResult::set_reference(double ref) {
  reference = ref;
  if (ref != 0.0)
    relative_error = std::abs(physical_value - ref) / std::abs(ref);
  else
    relative_error.reset();
}

nlohmann::json to_json(const IntegralResult& r) {
  return {{"n_qubits", r.n_qubits},
          {"snapped_distance", r.snapped_distance},
          {"raw_inner", r.raw_inner},
          {"norm_a", r.norm_a},
          {"norm_b", r.norm_b},
          {"spacing", r.spacing},
          {"physical_value", r.physical_value},
          {"reference", optional_json(r.reference)},
          {"relative_error", optional_json(r.relative_error)}};
}

IntegralResult overlap_1d(double zeta, double distance, int n, double length, Path via, std::uint64_t seed) {
  const Grid1D grid(n, length);
  const TwoCenterPlacement p = place_two_centers(distance, grid);
  const Mps a = build_sto1s(zeta, p.cusp_a, grid);
  const Mps b = build_sto1s(zeta, p.cusp_b, grid);
  IntegralResult r;
  r.n_qubits = n;
  r.spacing = grid.spacing();
  r.snapped_distance = p.snapped_distance;
  r.norm_a = a.norm;
  r.norm_b = b.norm;
  r.raw_inner = amplitude_overlap(a, b, via, seed);
  r.physical_value = r.raw_inner;
  r.set_reference(reference_overlap_1d_1s(zeta, p.snapped_distance));
  return r;
}

IntegralResult kinetic_1d(double zeta, double distance, int n, double length, Path via, std::uint64_t seed) {
  const Grid1D grid(n, length);
  const TwoCenterPlacement p = place_two_centers(distance, grid);
  const Mps a = build_sto1s(zeta, p.cusp_a, grid);
  const Mps b = build_sto1s(zeta, p.cusp_b, grid);
  const Mps da = build_sto1s_derivative(zeta, p.cusp_a, grid);
  const Mps db = build_sto1s_derivative(zeta, p.cusp_b, grid);
  IntegralResult r;
  r.n_qubits = n;
  r.spacing = grid.spacing();
  r.snapped_distance = p.snapped_distance;
  r.norm_a = da.norm;
  r.norm_b = db.norm;
  r.raw_inner = amplitude_overlap(da, db, via, seed);
  r.physical_value = 0.5 * r.raw_inner * (da.norm * db.norm) / (a.norm * b.norm);
  r.set_reference(reference_kinetic_1d_1s(zeta, p.snapped_distance));
  return r;
}

NuclearGeometry default_nuclear_geometry(double distance, int n, double length) {
  const Grid1D grid(n, length);
  const TwoCenterPlacement p = place_two_centers(distance, grid);
  return {p.center_a, p.center_b, p.center_a};
}

IntegralResult nuclear_attraction_1d(double zeta, std::pair<double, double> orbital_centers, double potential_center,
                                     double Z, int n, double length, double threshold, Path via,
                                     std::uint64_t seed) {
  const Grid1D grid(n, length);
  IntegralResult r;
  r.n_qubits = n;
  r.spacing = grid.spacing();
  r.snapped_distance = std::abs(orbital_centers.second - orbital_centers.first);
  if (Z == 0.0) return r;

  OrbitalSpec psi_a;
  psi_a.kind = OrbitalKind::Sto1s;
  psi_a.zeta = zeta;
  psi_a.center[0] = orbital_centers.first;
  OrbitalSpec phi_b;
  phi_b.kind = OrbitalKind::VPsi;
  phi_b.zeta = zeta;
  phi_b.center[0] = orbital_centers.second;
  phi_b.potential_center = potential_center;
  phi_b.Z = Z;

  const Mps a = decompose(sample(psi_a, grid), threshold);
  const Mps b = decompose(sample(phi_b, grid), threshold);
  // sqrt(zeta) normalizes each continuum orbital
  r.norm_a = std::sqrt(zeta) * a.norm;
  r.norm_b = std::sqrt(zeta) * b.norm;
  r.raw_inner = amplitude_overlap(a, b, via, seed);
  r.physical_value = r.norm_a * r.norm_b * r.raw_inner * r.spacing;
  return r;
}

double nuclear_attraction_dense(double zeta, std::pair<double, double> orbital_centers, double potential_center,
                                double Z, int n, double length) {
  const Grid1D grid(n, length);
  double sum = 0.0;
  for (std::uint64_t j = 0; j < grid.size(); ++j) {
    const double x = grid.point(j);
    const double rc = std::abs(x - potential_center);
    if (rc == 0.0) throw ConfigurationError("potential center lies on a grid point");
    sum += std::sqrt(zeta) * std::exp(-zeta * std::abs(x - orbital_centers.first)) * (-Z / rc) * std::sqrt(zeta) *
           std::exp(-zeta * std::abs(x - orbital_centers.second));
  }
  return sum * grid.spacing();
}

IntegralResult overlap_3d_spherical(int n, double length, Path via, std::uint64_t seed) {
  const Grid1D grid(n, length);
  const Mps a = build_sto2s(1.0, grid);
  const Mps b = build_h2s_jacobian(1.0, grid);
  IntegralResult r;
  r.n_qubits = n;
  r.spacing = grid.spacing();
  r.norm_a = a.norm;
  r.norm_b = b.norm;
  r.raw_inner = amplitude_overlap(a, b, via, seed);
  r.physical_value = r.raw_inner;
  r.set_reference(0.0);
  return r;
}

IntegralResult overlap_3d_cartesian(PairKind pair, double distance, int n_per_coord, double length,
                                    double threshold, Path via, double zeta, std::uint64_t seed) {
  if (n_per_coord > kCartesianQubitCeiling)
    throw ResourceLimitError(fmt::format("3D Cartesian overlaps are limited to {} qubits per coordinate (2^{} amplitudes)",
                                         kCartesianQubitCeiling, 3 * kCartesianQubitCeiling));
  if (via == Path::Circuit && n_per_coord > kCartesianCircuitCeiling)
    throw ResourceLimitError(fmt::format("3D circuit simulation is limited to {} qubits per coordinate",
                                         kCartesianCircuitCeiling));
  if (distance < 0.0 || distance >= length / 2)
    throw DomainError(fmt::format("distance {} does not fit in a box of length {}", distance, length));
  const Grid3D grid(Grid1D(n_per_coord, length, -length / 2), Ordering::Grouped);

  OrbitalSpec bra;
  bra.kind = pair == PairKind::S2S2 ? OrbitalKind::Cart2s : OrbitalKind::Cart1s;
  bra.zeta = zeta;
  bra.center = {distance, 0.0, 0.0};
  OrbitalSpec ket;
  ket.kind = pair == PairKind::S1S1 ? OrbitalKind::Cart1s : OrbitalKind::Cart2s;
  ket.zeta = zeta;

  const Mps a = decompose(sample(bra, grid), threshold);
  const Mps b = decompose(sample(ket, grid), threshold);
  IntegralResult r;
  r.n_qubits = n_per_coord;
  r.spacing = grid.per_coord().spacing();
  r.snapped_distance = distance;
  r.norm_a = a.norm;
  r.norm_b = b.norm;
  r.raw_inner = amplitude_overlap(a, b, via, seed);
  r.physical_value = r.raw_inner;
  r.set_reference(reference_overlap_3d(pair, zeta, distance));
  return r;
}

std::vector<IntegralResult> convergence_scan(const ScanConfig& c, int n_min, int n_max, int jobs) {
  if (n_min > n_max) throw DomainError(fmt::format("empty qubit range [{}, {}]", n_min, n_max));
  std::vector<IntegralResult> out(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i);
    switch (c.kind) {
      case ScanKind::Overlap1D:
        out[i] = overlap_1d(c.zeta, c.distance, n, c.length, c.via, c.seed);
        break;
      case ScanKind::Kinetic1D:
        out[i] = kinetic_1d(c.zeta, c.distance, n, c.length, c.via, c.seed);
        break;
      case ScanKind::Spherical:
        out[i] = overlap_3d_spherical(n, c.length, c.via, c.seed);
        break;
      case ScanKind::Cartesian:
        out[i] = overlap_3d_cartesian(c.pair, c.distance, n, c.length, c.threshold, c.via, c.zeta, c.seed);
        break;
    }
  });
  return out;
}

}  // namespace stomps
