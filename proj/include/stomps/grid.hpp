#pragma once

// Binary grids on which functions are sampled and MPS chains are laid out.
//
// A register of n qubits addresses 2^n equally spaced points; bit k of the
// register (k = 0 is the most significant bit) carries weight 2^{n-1-k}
// grid steps.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace stomps {

enum class Ordering { Grouped, Interleaved };

std::string to_string(Ordering ordering);
Ordering ordering_from_string(const std::string& name);

class Grid1D {
 public:
  Grid1D(int n_qubits, double length, double origin = 0.0);

  int n_qubits() const { return n_qubits_; }
  double length() const { return length_; }
  double origin() const { return origin_; }
  double spacing() const { return spacing_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_qubits_; }

  double point(std::uint64_t j) const { return origin_ + static_cast<double>(j) * spacing_; }

  /// Weight of bit k (k = 0 most significant) in coordinate units.
  double bit_weight(int k) const;

  bool operator==(const Grid1D&) const = default;

 private:
  int n_qubits_;
  double length_;
  double origin_;
  double spacing_;
};

/// Bits of a grid index together with their coordinate weights.
struct BitDecomposition {
  std::vector<int> bits;        // MSB first
  std::vector<double> weights;  // 2^{n-1-k} * spacing

  /// Coordinate relative to the grid origin.
  double offset() const;
};

BitDecomposition decompose_index(std::uint64_t j, const Grid1D& grid);

struct SnappedPoint {
  std::uint64_t index;
  double value;
};

/// Nearest grid point to `value`; ties go to the lower index.
/// Throws DomainError when value lies outside [origin, origin + length).
SnappedPoint snap_to_grid(double value, const Grid1D& grid);

/// Identical 1D grids along x, y and z, flattened into one register.
class Grid3D {
 public:
  Grid3D(Grid1D per_coord, Ordering ordering = Ordering::Grouped);

  const Grid1D& per_coord() const { return per_coord_; }
  Ordering ordering() const { return ordering_; }
  int n_per_coord() const { return per_coord_.n_qubits(); }
  int n_total() const { return 3 * per_coord_.n_qubits(); }
  std::uint64_t size() const { return std::uint64_t{1} << n_total(); }

  std::uint64_t flatten_index(std::uint64_t jx, std::uint64_t jy, std::uint64_t jz) const;
  std::array<std::uint64_t, 3> unflatten_index(std::uint64_t flat) const;
  std::array<double, 3> point(std::uint64_t flat) const;

  bool operator==(const Grid3D&) const = default;

 private:
  Grid1D per_coord_;
  Ordering ordering_;
};

/// Two 1s cusps a snapped distance apart, placed halfway between grid points
/// and roughly centred in the box. Cusp index c sits at origin + (c - 1/2)dx,
/// so indices >= c lie on the decaying side.
struct TwoCenterPlacement {
  std::uint64_t steps;  // snapped distance in grid steps
  std::uint64_t cusp_a;
  std::uint64_t cusp_b;
  double snapped_distance;
  double center_a;
  double center_b;
};

TwoCenterPlacement place_two_centers(double distance, const Grid1D& grid);

/// Coordinate of a cusp lying between grid points c-1 and c.
double cusp_coordinate(std::uint64_t cusp_index, const Grid1D& grid);

// JSON object {n_qubits, length, origin, ordering}; 1D grids write ordering null.
nlohmann::json to_json(const Grid1D& grid);
nlohmann::json to_json(const Grid3D& grid);
Grid1D grid1d_from_json(const nlohmann::json& j);
Grid3D grid3d_from_json(const nlohmann::json& j);

}  // namespace stomps
