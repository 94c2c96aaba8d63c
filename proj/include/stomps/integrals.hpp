#pragma once

// One-electron integral pipelines: amplitude overlaps rescaled to physical
// matrix elements.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stomps/orbitals.hpp"

namespace stomps {

enum class Path { Tensor, Circuit };

std::string to_string(Path path);
Path path_from_string(const std::string& name);

struct IntegralResult {
  double raw_inner = 0.0;  // normalized <f|g>
  double norm_a = 0.0;
  double norm_b = 0.0;
  double spacing = 0.0;
  double physical_value = 0.0;
  std::optional<double> reference;
  std::optional<double> relative_error;
  int n_qubits = 0;
  double snapped_distance = 0.0;

  void set_reference(double ref);
};

nlohmann::json to_json(const IntegralResult& r);

/// Normalized 1s-1s overlap; prefactors cancel.
IntegralResult overlap_1d(double zeta, double distance, int n, double length = 16.0, Path via = Path::Tensor,
                          std::uint64_t seed = 0);

/// T_AB = 1/2 <psi_A'|psi_B'> between unit-norm 1s orbitals, from the overlap of
/// the normalized derivative states and the ratio of derivative to orbital norms.
IntegralResult kinetic_1d(double zeta, double distance, int n, double length = 16.0, Path via = Path::Tensor,
                          std::uint64_t seed = 0);

struct NuclearGeometry {
  double center_a;
  double center_b;
  double potential_center;
};

/// Default geometry: the overlap placement with the potential on center A.
NuclearGeometry default_nuclear_geometry(double distance, int n, double length = 16.0);

/// V_AB = N_A N_phi <psi_A|phi_B> dx with phi_B = V psi_B, V = -Z/|x - R_C| and
/// psi = sqrt(zeta) e^{-zeta|x-R|}. Grid-dependent; no reference is filled in.
IntegralResult nuclear_attraction_1d(double zeta, std::pair<double, double> orbital_centers, double potential_center,
                                     double Z, int n, double length = 16.0, double threshold = 1e-12,
                                     Path via = Path::Tensor, std::uint64_t seed = 0);

/// Sum_j psi_A(x_j) V(x_j) psi_B(x_j) dx evaluated directly.
double nuclear_attraction_dense(double zeta, std::pair<double, double> orbital_centers, double potential_center,
                                double Z, int n, double length = 16.0);

/// Radial <r e^{-r} | r (2 - r) e^{-r/2}> on [0, length).
IntegralResult overlap_3d_spherical(int n, double length = 32.0, Path via = Path::Tensor, std::uint64_t seed = 0);

inline constexpr int kCartesianQubitCeiling = 7;
inline constexpr int kCartesianCircuitCeiling = 4;

/// Bra at (+distance, 0, 0), ket on the box-center grid point; grouped layout.
/// For 1s2s the bra is the 1s orbital.
IntegralResult overlap_3d_cartesian(PairKind pair, double distance, int n_per_coord, double length = 16.0,
                                    double threshold = 1e-12, Path via = Path::Tensor, double zeta = 1.0,
                                    std::uint64_t seed = 0);

enum class ScanKind { Overlap1D, Kinetic1D, Spherical, Cartesian };

struct ScanConfig {
  ScanKind kind = ScanKind::Overlap1D;
  double zeta = 1.0;
  double distance = 1.4;
  double length = 16.0;
  double threshold = 1e-12;
  PairKind pair = PairKind::S1S1;
  Path via = Path::Tensor;
  std::uint64_t seed = 0;
};

std::vector<IntegralResult> convergence_scan(const ScanConfig& config, int n_min, int n_max, int jobs = 1);

}  // namespace stomps
