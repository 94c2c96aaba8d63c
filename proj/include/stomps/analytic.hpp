#pragma once

// Closed-form MPS for 1D orbitals built from per-bit transfer matrices.
// Nothing here touches 2^n-sized data.
//
// Bit k (k = 0 most significant) has weight p_k = 2^{n-1-k} dx in coordinate
// units. A function is left * A[0][s_0] * ... * A[n-1][s_{n-1}] * right.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "stomps/grid.hpp"
#include "stomps/mps.hpp"

namespace stomps {

struct TransferMatrixFamily {
  std::vector<SiteTensor> sites;
  Eigen::RowVectorXd left;
  Eigen::VectorXd right;
  int degree = 0;

  int bond_dim() const { return static_cast<int>(left.size()); }
  void validate() const;
};

/// e^{-zeta x}, x measured from the grid origin (as for every family below)
TransferMatrixFamily exp_family(double zeta, const Grid1D& grid);
/// sum_i c_i x^i e^{-zeta x}; A^1 is e_k times the binomial shift T(p_k).
TransferMatrixFamily polynomial_family(const std::vector<double>& coefficients, double zeta, const Grid1D& grid);
/// x e^{-zeta x}
TransferMatrixFamily sto2s_family(double zeta, const Grid1D& grid);
/// (2 - x/a) e^{-x/2a}, bond states (constant, linear, constant) with
/// boundaries (2, 1, 0) and (1, 0, 1).
TransferMatrixFamily h2s_family(double a, const Grid1D& grid);
/// x (2 - x/a) e^{-x/2a}
TransferMatrixFamily h2s_jacobian_family(double a, const Grid1D& grid);
/// e^{-zeta |x - R|} with the cusp between points cusp_index-1 and cusp_index.
/// Three bond states compare the index prefix against the cusp: tied, above
/// (decaying branch) and below (rising branch). With derivative = true the
/// branches carry -zeta and +zeta.
TransferMatrixFamily sto1s_family(double zeta, std::uint64_t cusp_index, const Grid1D& grid, bool derivative = false);

/// sqrt(sum_j f(x_j)^2) from the doubled transfer matrices sum_s A^s (x) A^s.
double norm_via_transfer(const TransferMatrixFamily& family);

/// Absorbs the boundaries and brings the chain to right-canonical form,
/// dropping exactly-dependent bond states. The norm field receives the raw
/// function norm.
Mps to_mps(const TransferMatrixFamily& family);

Mps build_exp(double zeta, const Grid1D& grid);
Mps build_sto1s(double zeta, std::uint64_t cusp_index, const Grid1D& grid);
Mps build_sto1s_derivative(double zeta, std::uint64_t cusp_index, const Grid1D& grid);
Mps build_sto2s(double zeta, const Grid1D& grid);
Mps build_h2s(double a, const Grid1D& grid);
Mps build_h2s_jacobian(double a, const Grid1D& grid);

}  // namespace stomps
