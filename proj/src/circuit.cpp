#include "stomps/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "stomps/errors.hpp"

namespace stomps {

namespace {

int bond_qubits_for(int chi) {
  int nb = 0;
  while ((1 << nb) < chi) ++nb;
  return nb;
}

}  // namespace

void Circuit::validate() const {
  const int q = n_total();
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    const Eigen::Index dim = Eigen::Index{1} << gate.n_qubits();
    if (gate.unitary.rows() != dim || gate.unitary.cols() != dim)
      throw PreconditionError(fmt::format("gate {} has a {}x{} matrix for {} qubits", g, gate.unitary.rows(),
                                          gate.unitary.cols(), gate.n_qubits()));
    std::vector<int> t = gate.targets;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw PreconditionError(fmt::format("gate {} repeats a target qubit", g));
    if (!t.empty() && (t.front() < 0 || t.back() >= q))
      throw PreconditionError(fmt::format("gate {} targets a qubit outside [0, {})", g, q));
  }
}

Statevector Statevector::zero(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 26) throw ResourceLimitError(fmt::format("statevector of {} qubits", n_qubits));
  Statevector s;
  s.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  s.amplitudes[0] = 1.0;
  return s;
}

int Statevector::n_qubits() const { return std::countr_zero(static_cast<std::uint64_t>(amplitudes.size())); }

Circuit compile(const Mps& mps, std::uint64_t seed) {
  if (mps.canonical != Canonical::RightCanonical || mps.right_canonical_defect() > 1e-9)
    throw PreconditionError("circuit compilation needs a right-canonical MPS; pass the state through decompose()");
  const int n = mps.n_sites();
  if (n == 0) throw PreconditionError("empty MPS");
  Circuit c;
  c.n_physical = n;
  c.n_bond = bond_qubits_for(mps.chi_max());
  const int m = 1 + c.n_bond;
  const Eigen::Index dim = Eigen::Index{1} << m;
  const Eigen::Index bond_dim = Eigen::Index{1} << c.n_bond;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const SiteTensor& t = mps.tensors[static_cast<std::size_t>(i)];
    const Eigen::Index chi_l = t[0].rows();
    const Eigen::Index chi_r = t[0].cols();
    Eigen::MatrixXd u(dim, dim);
    for (Eigen::Index col = chi_l; col < dim; ++col)
      for (Eigen::Index row = 0; row < dim; ++row) u(row, col) = normal(rng);
    u.leftCols(chi_l).setZero();
    for (int s = 0; s < 2; ++s)
      u.block(s * bond_dim, 0, chi_r, chi_l) = t[s].transpose();
    const Eigen::MatrixXd iso = u.leftCols(chi_l);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
    Eigen::MatrixXd q = qr.householderQ();
    // the leading columns of Q equal the isometry up to sign
    q.leftCols(chi_l) = iso;
    Gate g;
    g.unitary = q.cast<std::complex<double>>();
    g.targets.push_back(i);
    for (int b = 0; b < c.n_bond; ++b) g.targets.push_back(n + b);
    c.gates.push_back(std::move(g));
  }
  return c;
}

void apply_gate(const Gate& gate, Statevector& state) {
  const int q = state.n_qubits();
  const int m = gate.n_qubits();
  if (m > q) throw PreconditionError("gate is larger than the register");
  std::vector<int> pos(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    if (gate.targets[static_cast<std::size_t>(t)] < 0 || gate.targets[static_cast<std::size_t>(t)] >= q)
      throw PreconditionError(fmt::format("gate target {} outside a {}-qubit register",
                                          gate.targets[static_cast<std::size_t>(t)], q));
    pos[static_cast<std::size_t>(t)] = q - 1 - gate.targets[static_cast<std::size_t>(t)];
  }
  const std::uint64_t local = std::uint64_t{1} << m;
  std::vector<std::uint64_t> offset(local, 0);
  for (std::uint64_t l = 0; l < local; ++l)
    for (int t = 0; t < m; ++t)
      if ((l >> (m - 1 - t)) & 1U) offset[l] |= std::uint64_t{1} << pos[static_cast<std::size_t>(t)];
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());

  Eigen::VectorXcd in(static_cast<Eigen::Index>(local));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(local));
  const std::uint64_t groups = std::uint64_t{1} << (q - m);
  auto& amp = state.amplitudes;
  for (std::uint64_t r = 0; r < groups; ++r) {
    std::uint64_t base = r;
    for (int p : sorted) base = ((base >> p) << (p + 1)) | (base & ((std::uint64_t{1} << p) - 1));
    for (std::uint64_t l = 0; l < local; ++l) in[static_cast<Eigen::Index>(l)] = amp[static_cast<Eigen::Index>(base | offset[l])];
    out.noalias() = gate.unitary * in;
    for (std::uint64_t l = 0; l < local; ++l) amp[static_cast<Eigen::Index>(base | offset[l])] = out[static_cast<Eigen::Index>(l)];
  }
}

Statevector apply(const Circuit& circuit, Statevector state) {
  circuit.validate();
  if (state.n_qubits() != circuit.n_total())
    throw PreconditionError(fmt::format("circuit acts on {} qubits, statevector has {}", circuit.n_total(),
                                        state.n_qubits()));
  for (const Gate& g : circuit.gates) apply_gate(g, state);
  return state;
}

Eigen::VectorXd physical_amplitudes(const Statevector& state, int n_physical) {
  const int nb = state.n_qubits() - n_physical;
  if (nb < 0) throw PreconditionError("register smaller than the physical qubit count");
  const Eigen::Index count = Eigen::Index{1} << n_physical;
  Eigen::VectorXd out(count);
  for (Eigen::Index j = 0; j < count; ++j) out[j] = state.amplitudes[j << nb].real();
  return out;
}

double bond_zero_probability(const Statevector& state, int n_physical) {
  const int nb = state.n_qubits() - n_physical;
  double p = 0.0;
  for (Eigen::Index j = 0; j < (Eigen::Index{1} << n_physical); ++j) p += std::norm(state.amplitudes[j << nb]);
  return p;
}

Circuit with_bond_register(const Circuit& circuit, int n_bond) {
  if (n_bond < circuit.n_bond)
    throw PreconditionError(fmt::format("cannot shrink a {}-qubit bond register to {}", circuit.n_bond, n_bond));
  Circuit out = circuit;
  const int shift = n_bond - circuit.n_bond;
  out.n_bond = n_bond;
  // small bond values stay on the least significant bond qubits
  for (Gate& g : out.gates)
    for (int& t : g.targets)
      if (t >= circuit.n_physical) t += shift;
  return out;
}

Circuit adjoint(const Circuit& circuit) {
  Circuit out;
  out.n_physical = circuit.n_physical;
  out.n_bond = circuit.n_bond;
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it)
    out.gates.push_back(Gate{it->unitary.adjoint(), it->targets});
  return out;
}

ComputeUncompute compute_uncompute(const Circuit& prep_a, const Circuit& prep_b) {
  if (prep_a.n_physical != prep_b.n_physical)
    throw PreconditionError(fmt::format("physical registers differ ({} vs {} qubits)", prep_a.n_physical,
                                        prep_b.n_physical));
  const int nb = std::max(prep_a.n_bond, prep_b.n_bond);
  const Circuit a = with_bond_register(prep_a, nb);
  const Circuit b = with_bond_register(prep_b, nb);
  if (a.n_total() != b.n_total()) throw PreconditionError("registers differ after padding");
  Statevector s = apply(b, Statevector::zero(b.n_total()));
  s = apply(adjoint(a), std::move(s));
  const std::complex<double> amp = s.amplitudes[0];
  return {std::norm(amp), amp.real()};
}

std::uint64_t gate_cost_estimate(const Circuit& circuit) {
  std::uint64_t total = 0;
  for (const Gate& g : circuit.gates)
    if (g.n_qubits() >= 2) total += std::uint64_t{1} << (2 * g.n_qubits());
  return total;
}

std::uint64_t sample_zero_counts(double p0, std::uint64_t shots, std::uint64_t seed) {
  if (!(p0 >= 0.0 && p0 <= 1.0 + 1e-12)) throw DomainError(fmt::format("probability {} outside [0, 1]", p0));
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> dist(shots, std::min(p0, 1.0));
  return dist(rng);
}

double max_unitarity_defect(const Circuit& circuit) {
  double worst = 0.0;
  for (const Gate& g : circuit.gates) {
    const Eigen::MatrixXcd d =
        g.unitary.adjoint() * g.unitary - Eigen::MatrixXcd::Identity(g.unitary.rows(), g.unitary.cols());
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

nlohmann::json to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : circuit.gates) {
    nlohmann::json u = nlohmann::json::array();
    for (Eigen::Index r = 0; r < g.unitary.rows(); ++r)
      for (Eigen::Index c = 0; c < g.unitary.cols(); ++c) u.push_back({g.unitary(r, c).real(), g.unitary(r, c).imag()});
    gates.push_back({{"targets", g.targets}, {"unitary", std::move(u)}});
  }
  return {{"n_physical", circuit.n_physical}, {"n_bond", circuit.n_bond}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  try {
    c.n_physical = j.at("n_physical").get<int>();
    c.n_bond = j.at("n_bond").get<int>();
    for (const auto& jg : j.at("gates")) {
      Gate g;
      g.targets = jg.at("targets").get<std::vector<int>>();
      const Eigen::Index dim = Eigen::Index{1} << g.targets.size();
      const auto& u = jg.at("unitary");
      if (static_cast<Eigen::Index>(u.size()) != dim * dim) throw IoError("unitary has the wrong number of entries");
      g.unitary.resize(dim, dim);
      for (Eigen::Index k = 0; k < dim * dim; ++k)
        g.unitary(k / dim, k % dim) = {u[static_cast<std::size_t>(k)].at(0).get<double>(),
                                       u[static_cast<std::size_t>(k)].at(1).get<double>()};
      c.gates.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed circuit JSON: {}", e.what()));
  }
  c.validate();
  return c;
}

std::string text_summary(const Circuit& circuit) {
  std::ostringstream os;
  os << fmt::format("circuit: {} physical + {} bond qubits, {} gates\n", circuit.n_physical, circuit.n_bond,
                    circuit.gates.size());
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    os << fmt::format("  gate {:>3}: {} qubits [", g, circuit.gates[g].n_qubits());
    for (std::size_t t = 0; t < circuit.gates[g].targets.size(); ++t)
      os << (t ? " " : "") << circuit.gates[g].targets[t];
    os << "]\n";
  }
  os << fmt::format("two-qubit gate estimate (upper bound, sum of 4^m): {}\n", gate_cost_estimate(circuit));
  return os.str();
}

}  // namespace stomps
