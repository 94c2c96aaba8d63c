#pragma once

// Bond-dimension studies of 3D Cartesian 1s states, two-electron kernel ranks
// and the Fourier spectrum of the Coulomb kernel.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stomps/grid.hpp"
#include "stomps/mps.hpp"
#include "stomps/orbitals.hpp"

namespace stomps {

struct ScanRecord {
  int n_per_coord = 0;
  int total_qubits = 0;
  double threshold = 0.0;
  double zeta = 1.0;
  double length = 32.0;
  Ordering ordering = Ordering::Grouped;
  int chi_max = 1;
  std::optional<int> chi_xy;  // grouped layouts only
  std::optional<int> chi_yz;
  std::optional<int> delta_chi_max;  // against the previous n at the same threshold
  double runtime = 0.0;              // seconds
};

/// Cart1s centered on the box-center grid point of [-L/2, L/2)^3.
SampledState cart1s_state(int n_per_coord, double zeta, double length, Ordering ordering = Ordering::Grouped);

ScanRecord scan_point(int n_per_coord, double zeta, double length, double threshold,
                      Ordering ordering = Ordering::Grouped);

/// Ordered by n, then by threshold as given.
std::vector<ScanRecord> scan_resolution(double zeta, double length, int n_min, int n_max,
                                        const std::vector<double>& thresholds, int jobs = 1);

std::vector<ScanRecord> scan_zeta(const std::vector<double>& zetas, int n_per_coord, double length = 32.0,
                                  double threshold = 1e-12, int jobs = 1);

/// (grouped, interleaved)
std::pair<ScanRecord, ScanRecord> compare_orderings(int n_per_coord, double zeta = 1.0, double length = 32.0,
                                                    double threshold = 1e-12);

struct ProfileReport {
  BondProfile profile;
  std::vector<int> x_dims;  // cuts inside each register
  std::vector<int> y_dims;
  std::vector<int> z_dims;
  int x_peak = 1;
  int y_peak = 1;
  int z_peak = 1;
};

ProfileReport bond_profile_report(int n_per_coord, double zeta = 1.0, double threshold = 1e-12,
                                  double length = 32.0);

enum class Kernel { Coulomb, Bare, Unit };

struct TwoElectronRank {
  int rank = 0;
  int n_points = 0;
  double ratio = 0.0;
};

/// Numerical rank (relative cutoff 1e-12) of M[j,k] = f1(x_j) K(x_j, y_k) f2(y_k)
/// with y_k = x_k + dx/2, f_i = e^{-zeta_i |x - R_i|} centered in [0, L).
TwoElectronRank two_electron_rank(int n, std::pair<double, double> zetas = {1.0, 1.0}, double separation = 1.4,
                                  double length = 32.0, Kernel kernel = Kernel::Coulomb);

/// Smallest fraction of DFT modes holding `weight` of the squared spectrum.
double spectral_mode_fraction(const Eigen::VectorXd& signal, double weight = 0.99);

/// 1/x sampled at x_j = (j + 1/2) dx on [0, L).
double fourier_weight(int n, double length = 16.0, double weight = 0.99);

}  // namespace stomps
