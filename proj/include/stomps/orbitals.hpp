#pragma once

// Target functions: Slater-type orbitals, their derivatives, Coulomb-weighted
// products and 3D Cartesian forms, with samplers and closed-form references.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include <Eigen/Dense>
#include <json.hpp>

#include "stomps/grid.hpp"

namespace stomps {

enum class OrbitalKind { Exp, Sto1s, Sto1sDeriv, Sto2s, H2s, H2sJacobian, VPsi, Cart1s, Cart2s };

std::string to_string(OrbitalKind kind);
OrbitalKind orbital_kind_from_string(const std::string& name);
bool is_cartesian(OrbitalKind kind);

struct OrbitalSpec {
  OrbitalKind kind = OrbitalKind::Sto1s;
  double zeta = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};  // 1D kinds use center[0]
  double a = 1.0;
  double potential_center = 0.0;  // VPsi only
  double Z = 1.0;                 // VPsi only

  void validate() const;
};

// 1D functions (all kinds except Cart*). Radial kinds use r = |x - center|;
// Exp is e^{-zeta (x - center)} without the absolute value.
double evaluate(const OrbitalSpec& spec, double x);
double evaluate(const OrbitalSpec& spec, const std::array<double, 3>& p);

using AnyGrid = std::variant<Grid1D, Grid3D>;

struct SampledState {
  Eigen::VectorXd amplitudes;  // unit norm
  double norm = 0.0;           // sqrt(sum f(x_j)^2) of the raw samples
  AnyGrid grid;

  int n_total() const;
};

/// Raw samples, no normalization. Throws ConfigurationError for a VPsi pole
/// on a grid point.
Eigen::VectorXd sample_raw(const OrbitalSpec& spec, const Grid1D& grid);
Eigen::VectorXd sample_raw(const OrbitalSpec& spec, const Grid3D& grid);

SampledState sample(const OrbitalSpec& spec, const Grid1D& grid);
SampledState sample(const OrbitalSpec& spec, const Grid3D& grid);

/// Normalizes an arbitrary raw vector into a SampledState.
SampledState make_state(Eigen::VectorXd raw, AnyGrid grid);

struct PotentialCenter {
  double value;
  bool shifted;
};

/// Moves a potential center that coincides with a grid point by half a spacing.
PotentialCenter resolve_potential_center(double center, const Grid1D& grid);

// Closed forms and quadrature references.
double reference_overlap_1d_1s(double zeta, double d);
double reference_kinetic_1d_1s(double zeta, double d);

enum class PairKind { S1S1, S2S2, S1S2 };
std::string to_string(PairKind pair);
PairKind pair_kind_from_string(const std::string& name);

/// Normalized 3D overlap of two orbitals a distance d apart. 1s uses zeta, 2s
/// is the hydrogen form (2 - r/a) e^{-r/2a}.
double reference_overlap_3d(PairKind pair, double zeta, double d, double a = 1.0);

nlohmann::json to_json(const OrbitalSpec& spec);
OrbitalSpec orbital_spec_from_json(const nlohmann::json& j);

// Flat binary: uint64 n_total, float64 norm, then 2^n_total float64 amplitudes,
// all little-endian.
void write_binary(const SampledState& state, const std::filesystem::path& path);
SampledState read_binary_state(const std::filesystem::path& path, AnyGrid grid);
void write_csv(const SampledState& state, const std::filesystem::path& path);

}  // namespace stomps
