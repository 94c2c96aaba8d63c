#include <catch_amalgamated.hpp>

#include <random>

#include "stomps/analytic.hpp"
#include "stomps/circuit.hpp"
#include "stomps/errors.hpp"

using namespace stomps;
using Catch::Approx;

namespace {

Eigen::VectorXd random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(Eigen::Index{1} << n);
  for (auto& x : v) x = g(rng);
  return v.normalized();
}

Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {g(rng), g(rng)};
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

// full-register matrix, qubit 0 being the most significant bit
Eigen::MatrixXcd embed(const Gate& gate, int q) {
  const Eigen::Index dim = Eigen::Index{1} << q;
  const int m = gate.n_qubits();
  auto local = [&](Eigen::Index i) {
    Eigen::Index l = 0;
    for (int t = 0; t < m; ++t) l = 2 * l + ((i >> (q - 1 - gate.targets[static_cast<std::size_t>(t)])) & 1);
    return l;
  };
  Eigen::Index mask = 0;
  for (int t : gate.targets) mask |= Eigen::Index{1} << (q - 1 - t);
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      if ((i & ~mask) == (j & ~mask)) full(i, j) = gate.unitary(local(i), local(j));
  return full;
}

}  // namespace

TEST_CASE("gate application matches the embedded dense matrix") {
  const int q = 5;
  for (const std::vector<int>& targets : {std::vector<int>{2}, {3, 0}, {0, 4, 1}, {4, 3}}) {
    Gate g{random_unitary(1 << targets.size(), targets.size()), targets};
    Statevector s;
    s.amplitudes = random_state(q, 11).cast<std::complex<double>>();
    const Eigen::VectorXcd expected = embed(g, q) * s.amplitudes;
    apply_gate(g, s);
    CHECK((s.amplitudes - expected).norm() < 1e-13);
  }
  Statevector s = Statevector::zero(2);
  CHECK_THROWS_AS(apply_gate(Gate{random_unitary(2, 1), {2}}, s), PreconditionError);
  CHECK_THROWS_AS(Statevector::zero(27), ResourceLimitError);
}

TEST_CASE("compiled circuits prepare the MPS state") {
  for (int n : {1, 3, 6, 9}) {
    const Mps m = decompose(random_state(n, 20 + n), 0.0);
    const Circuit c = compile(m, 5);
    CHECK(c.n_physical == n);
    CHECK(max_unitarity_defect(c) < 1e-12);
    const Statevector out = apply(c, Statevector::zero(c.n_total()));
    CHECK(bond_zero_probability(out, n) == Approx(1.0).epsilon(1e-12));
    const Eigen::VectorXd phys = physical_amplitudes(out, n);
    CHECK(std::abs(phys.dot(reconstruct(m))) >= 1.0 - 1e-10);
    CHECK((phys - reconstruct(m)).norm() < 1e-10);
  }
}

TEST_CASE("compile works on analytic MPS and rejects other gauges") {
  const Grid1D g(7, 16.0);
  const Mps m = build_sto1s(1.0, 64, g);
  const Circuit c = compile(m);
  const auto phys = physical_amplitudes(apply(c, Statevector::zero(c.n_total())), 7);
  CHECK((phys - reconstruct(m)).norm() < 1e-10);
  Mps bad = m;
  bad.canonical = Canonical::NonCanonical;
  CHECK_THROWS_AS(compile(bad), PreconditionError);
}

TEST_CASE("compute-uncompute returns the signed overlap") {
  const Eigen::VectorXd a = random_state(6, 1);
  Eigen::VectorXd b(64);
  for (int j = 0; j < 64; ++j) b[j] = std::exp(-0.1 * j);
  b.normalize();
  const Mps ma = decompose(a, 0.0);
  const Mps mb = decompose(b, 1e-12);
  const Circuit ca = compile(ma, 1);
  const Circuit cb = compile(mb, 2);
  REQUIRE(ca.n_bond != cb.n_bond);
  const auto r = compute_uncompute(ca, cb);
  CHECK(r.signed_amplitude == Approx(a.dot(b)).margin(1e-12));
  CHECK(r.p0 == Approx(a.dot(b) * a.dot(b)).margin(1e-12));
  CHECK(compute_uncompute(ca, ca).p0 == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(compute_uncompute(ca, compile(decompose(random_state(5, 3), 0.0))), PreconditionError);
}

TEST_CASE("adjoint undoes the circuit") {
  const Circuit c = compile(decompose(random_state(5, 8), 0.0), 3);
  Statevector s;
  s.amplitudes = random_state(c.n_total(), 4).cast<std::complex<double>>();
  const Statevector back = apply(adjoint(c), apply(c, s));
  CHECK((back.amplitudes - s.amplitudes).norm() < 1e-12);
}

TEST_CASE("seeds change the completion but not the prepared state") {
  const Mps m = decompose(random_state(5, 6), 0.0);
  const Circuit c0 = compile(m, 0);
  const Circuit c1 = compile(m, 1);
  CHECK((c0.gates[0].unitary - c1.gates[0].unitary).norm() > 1e-6);
  CHECK((compile(m, 0).gates[0].unitary - c0.gates[0].unitary).norm() == 0.0);
  const auto p0 = physical_amplitudes(apply(c0, Statevector::zero(c0.n_total())), 5);
  const auto p1 = physical_amplitudes(apply(c1, Statevector::zero(c1.n_total())), 5);
  CHECK((p0 - p1).norm() < 1e-12);
}

TEST_CASE("gate cost, sampling and serialization") {
  const Circuit c = compile(decompose(random_state(4, 2), 0.0));
  std::uint64_t expected = 0;
  for (const auto& g : c.gates)
    if (g.n_qubits() >= 2) expected += std::uint64_t{1} << (2 * g.n_qubits());
  CHECK(gate_cost_estimate(c) == expected);

  CHECK(sample_zero_counts(1.0, 1000, 1) == 1000);
  CHECK(sample_zero_counts(0.0, 1000, 1) == 0);
  CHECK(sample_zero_counts(0.3, 100000, 9) == sample_zero_counts(0.3, 100000, 9));
  CHECK(std::abs(static_cast<double>(sample_zero_counts(0.3, 100000, 9)) - 30000.0) < 1000.0);
  CHECK_THROWS_AS(sample_zero_counts(1.5, 10, 1), DomainError);

  const Circuit back = circuit_from_json(to_json(c));
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(back.gates[i].targets == c.gates[i].targets);
    CHECK((back.gates[i].unitary - c.gates[i].unitary).norm() == 0.0);
  }
  CHECK_FALSE(text_summary(c).empty());
  CHECK_THROWS_AS(circuit_from_json(nlohmann::json{{"gates", 3}}), IoError);
}

TEST_CASE("malformed circuits are rejected") {
  Circuit c;
  c.n_physical = 2;
  c.gates.push_back(Gate{random_unitary(4, 1), {0, 0}});
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c.gates[0].targets = {0, 2};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c.gates[0] = Gate{random_unitary(2, 1), {0, 1}};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
}
