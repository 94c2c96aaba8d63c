#pragma once

// Matrix product states over qubit chains. Site 0 is the most significant bit
// of the amplitude index; A[i][s] is a chi_{i} x chi_{i+1} matrix.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stomps/grid.hpp"
#include "stomps/orbitals.hpp"

namespace stomps {

enum class Canonical { RightCanonical, NonCanonical };

using SiteTensor = std::array<Eigen::MatrixXd, 2>;

/// Dense vectors above this many amplitudes are refused.
inline constexpr int kDenseQubitCeiling = 24;

struct Mps {
  std::vector<SiteTensor> tensors;
  double threshold = 0.0;
  double norm = 1.0;  // discrete L2 norm of the encoded raw function
  double truncation_weight = 0.0;  // sum of discarded squared singular values
  Canonical canonical = Canonical::NonCanonical;

  int n_sites() const { return static_cast<int>(tensors.size()); }
  /// chi_0 ... chi_n
  std::vector<int> bond_dims() const;
  int chi_max() const;
  /// max over sites of || sum_s A^s A^sT - I ||_inf
  double right_canonical_defect() const;
};

struct BondProfile {
  std::vector<int> dims;  // chi_1 ... chi_{n-1}
  int max_dim = 1;
  std::optional<int> chi_xy;  // grouped 3D layouts only
  std::optional<int> chi_yz;
};

/// Right-canonical SVD sweep from the least significant bit. Singular values
/// below `threshold` are discarded (a value equal to it is kept) and the
/// survivors renormalized.
Mps decompose(const Eigen::VectorXd& unit_vector, double threshold, double norm = 1.0);
Mps decompose(const SampledState& state, double threshold);

Eigen::VectorXd reconstruct(const Mps& mps);

double inner_product(const Mps& a, const Mps& b);

BondProfile bond_profile(const Mps& mps);
BondProfile bond_profile(const Mps& mps, const Grid3D& grid);

/// Singular values of the (2^cut x 2^{n-cut}) reshape of a dense vector.
Eigen::VectorXd cut_singular_values(const Eigen::VectorXd& state, int cut);
int schmidt_rank(const Eigen::VectorXd& state, int cut, double threshold);

nlohmann::json summary_json(const Mps& mps);
nlohmann::json to_json(const BondProfile& profile);

// Binary container: magic "STMPS001", uint64 n, float64 threshold, norm,
// truncation_weight, uint8 canonical flag, then per site uint64 rows, cols and
// the s=0 and s=1 matrices in row-major float64.
void write_binary(const Mps& mps, const std::filesystem::path& path);
Mps read_binary_mps(const std::filesystem::path& path);

}  // namespace stomps
