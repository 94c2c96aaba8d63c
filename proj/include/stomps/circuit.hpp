#pragma once

// Sequential-unitary state preparation and dense statevector simulation.
//
// Qubits 0..n-1 are physical (0 = most significant), n..n+nb-1 carry the bond
// index. Qubit q sits at bit position Q-1-q of the statevector index, so the
// index is phys * 2^nb + bond. targets[0] of a gate is its local MSB.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stomps/mps.hpp"

namespace stomps {

struct Gate {
  Eigen::MatrixXcd unitary;
  std::vector<int> targets;

  int n_qubits() const { return static_cast<int>(targets.size()); }
};

struct Circuit {
  std::vector<Gate> gates;
  int n_physical = 0;
  int n_bond = 0;

  int n_total() const { return n_physical + n_bond; }
  void validate() const;
};

struct Statevector {
  Eigen::VectorXcd amplitudes;

  static Statevector zero(int n_qubits);
  int n_qubits() const;
};

/// One gate per site, MSB site first. Gate i maps |a>_bond|0>_i to
/// sum_{s,b} A[i][s](a,b) |s>_i|b>_bond; the remaining columns come from a
/// QR completion of seeded random vectors.
Circuit compile(const Mps& mps, std::uint64_t seed = 0);

void apply_gate(const Gate& gate, Statevector& state);
Statevector apply(const Circuit& circuit, Statevector state);

/// Physical-register amplitudes with the bond register projected on |0...0>.
Eigen::VectorXd physical_amplitudes(const Statevector& state, int n_physical);

/// Probability carried by bond-register value 0.
double bond_zero_probability(const Statevector& state, int n_physical);

Circuit with_bond_register(const Circuit& circuit, int n_bond);
Circuit adjoint(const Circuit& circuit);

struct ComputeUncompute {
  double p0;
  double signed_amplitude;
};

/// U_A^dagger U_B |0>; the all-zeros amplitude is <psi_A|psi_B>.
ComputeUncompute compute_uncompute(const Circuit& prep_a, const Circuit& prep_b);

/// Upper bound on two-qubit gates: sum of 4^m over gates with m >= 2.
/// Single-qubit gates count zero. Not a transpiled count.
std::uint64_t gate_cost_estimate(const Circuit& circuit);

/// Binomial draw of |0...0> outcomes in `shots` noise-free repetitions.
std::uint64_t sample_zero_counts(double p0, std::uint64_t shots, std::uint64_t seed);

double max_unitarity_defect(const Circuit& circuit);

nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);
std::string text_summary(const Circuit& circuit);

}  // namespace stomps
