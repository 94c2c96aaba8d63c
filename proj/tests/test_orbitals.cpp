#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>

#include "stomps/errors.hpp"
#include "stomps/orbitals.hpp"

using namespace stomps;
using Catch::Approx;

namespace {

// midpoint rule on a wide interval
template <class F>
double midpoint(F f, double lo, double hi, int steps) {
  const double h = (hi - lo) / steps;
  double s = 0.0;
  for (int i = 0; i < steps; ++i) s += f(lo + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_CASE("1D overlap closed form against quadrature") {
  for (double zeta : {0.7, 1.0, 2.0})
    for (double d : {0.0, 0.5, 1.4, 3.0}) {
      const double q = midpoint(
          [&](double x) { return zeta * std::exp(-zeta * std::abs(x) - zeta * std::abs(x - d)); }, -40, 40, 800000);
      CHECK(reference_overlap_1d_1s(zeta, d) == Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("1D kinetic closed form against quadrature") {
  // T = 1/2 <psi_a'|psi_b'> with psi = sqrt(zeta) e^{-zeta|x - R|}
  for (double zeta : {1.0, 2.0})
    for (double d : {0.3, 0.5, 1.4}) {
      auto dpsi = [zeta](double x, double c) {
        return -zeta * std::sqrt(zeta) * (x > c ? 1.0 : -1.0) * std::exp(-zeta * std::abs(x - c));
      };
      const double q = midpoint([&](double x) { return 0.5 * dpsi(x, 0.0) * dpsi(x, d); }, -40, 40, 800000);
      CHECK(reference_kinetic_1d_1s(zeta, d) == Approx(q).epsilon(1e-6).margin(1e-7));
    }
  CHECK_THROWS_AS(reference_kinetic_1d_1s(1.0, -1.0), DomainError);
}

TEST_CASE("3D overlap references") {
  CHECK(reference_overlap_3d(PairKind::S1S1, 1.0, 0.0) == Approx(1.0));
  CHECK(reference_overlap_3d(PairKind::S2S2, 1.0, 0.0) == Approx(1.0).epsilon(1e-10));
  // hydrogen 1s and 2s are orthogonal
  CHECK(reference_overlap_3d(PairKind::S1S2, 1.0, 0.0, 1.0) == Approx(0.0).margin(1e-10));
  CHECK(reference_overlap_3d(PairKind::S1S1, 1.0, 1.4) == Approx(0.752943).margin(1e-6));
}

TEST_CASE("3D 1s-2s overlap against cylindrical quadrature") {
  const double d = 1.4;
  auto f1 = [](double r) { return std::exp(-r); };
  auto f2 = [](double r) { return (2.0 - r) * std::exp(-r / 2.0); };
  const double h = 0.01;
  double s = 0.0;
  for (double rho = h / 2; rho < 40.0; rho += h)
    for (double z = -40.0 + h / 2; z < 40.0; z += h) {
      const double ra = std::hypot(rho, z);
      const double rb = std::hypot(rho, z - d);
      s += 2 * M_PI * rho * f1(ra) * f2(rb);
    }
  s *= h * h;
  const double n1 = M_PI;        // int e^{-2r} d^3r
  const double n2 = 32.0 * M_PI; // int (2 - r)^2 e^{-r} d^3r
  CHECK(reference_overlap_3d(PairKind::S1S2, 1.0, d) == Approx(s / std::sqrt(n1 * n2)).margin(1e-4));
}

TEST_CASE("orbital evaluation") {
  OrbitalSpec s;
  s.kind = OrbitalKind::Sto1s;
  s.zeta = 2.0;
  s.center[0] = 1.0;
  CHECK(evaluate(s, 1.5) == Approx(std::exp(-1.0)));
  CHECK(evaluate(s, 0.5) == Approx(std::exp(-1.0)));
  s.kind = OrbitalKind::Sto1sDeriv;
  CHECK(evaluate(s, 1.5) == Approx(-2.0 * std::exp(-1.0)));
  CHECK(evaluate(s, 0.5) == Approx(2.0 * std::exp(-1.0)));
  CHECK(evaluate(s, 1.0) == Approx(-2.0));
  s.kind = OrbitalKind::Exp;
  CHECK(evaluate(s, 0.0) == Approx(std::exp(2.0)));
  s.kind = OrbitalKind::VPsi;
  s.potential_center = 3.0;
  s.Z = 2.0;
  CHECK(evaluate(s, 2.0) == Approx(-2.0 * std::exp(-2.0)));
  s.kind = OrbitalKind::H2sJacobian;
  s.center[0] = 0.0;
  s.a = 1.0;
  CHECK(evaluate(s, 1.0) == Approx(std::exp(-0.5)));
  s.kind = OrbitalKind::Cart1s;
  s.zeta = 1.0;
  CHECK(evaluate(s, std::array<double, 3>{1.0, 2.0, 2.0}) == Approx(std::exp(-3.0)));
  s.zeta = 0.0;
  CHECK_THROWS_AS(evaluate(s, std::array<double, 3>{0, 0, 0}), DomainError);
}

TEST_CASE("sampling normalizes and keeps the raw norm") {
  OrbitalSpec s;
  s.center[0] = 8.0;
  const Grid1D g(6, 16.0);
  const Eigen::VectorXd raw = sample_raw(s, g);
  const SampledState st = sample(s, g);
  CHECK(st.amplitudes.norm() == Approx(1.0));
  CHECK(st.norm == Approx(raw.norm()));
  CHECK((st.amplitudes * st.norm - raw).norm() < 1e-12);
  CHECK(st.n_total() == 6);

  OrbitalSpec c;
  c.kind = OrbitalKind::Cart1s;
  CHECK_THROWS_AS(sample(c, g), DomainError);
  CHECK_THROWS_AS(sample(s, Grid3D(Grid1D(2, 4.0, -2.0))), DomainError);
  CHECK(sample(c, Grid3D(Grid1D(3, 8.0, -4.0))).n_total() == 9);
}

TEST_CASE("Coulomb pole on a grid point is rejected") {
  const Grid1D g(4, 16.0);
  OrbitalSpec s;
  s.kind = OrbitalKind::VPsi;
  s.center[0] = 7.5;
  s.potential_center = 7.0;
  CHECK_THROWS_AS(sample(s, g), ConfigurationError);
  const auto pc = resolve_potential_center(7.0, g);
  CHECK(pc.shifted);
  CHECK(pc.value == 7.5);
  s.potential_center = pc.value;
  CHECK_NOTHROW(sample(s, g));
  CHECK_FALSE(resolve_potential_center(7.5, g).shifted);
}

TEST_CASE("orbital JSON and binary state round trip") {
  OrbitalSpec s;
  s.kind = OrbitalKind::H2s;
  s.a = 1.5;
  s.center = {0.25, -1.0, 2.0};
  const OrbitalSpec t = orbital_spec_from_json(to_json(s));
  CHECK(t.kind == s.kind);
  CHECK(t.a == s.a);
  CHECK(t.center == s.center);
  CHECK(orbital_kind_from_string("sto1s_deriv") == OrbitalKind::Sto1sDeriv);
  CHECK_THROWS_AS(orbital_kind_from_string("3d"), DomainError);

  const Grid1D g(5, 16.0);
  const SampledState st = sample(s, g);
  const auto path = std::filesystem::temp_directory_path() / "stomps_state_test.bin";
  write_binary(st, path);
  const SampledState back = read_binary_state(path, g);
  CHECK(back.norm == st.norm);
  CHECK(back.amplitudes == st.amplitudes);
  CHECK_THROWS_AS(read_binary_state(path, Grid1D(6, 16.0)), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_binary_state(path, g), IoError);
}

TEST_CASE("CSV export is capped at 16 qubits") {
  OrbitalSpec c;
  c.kind = OrbitalKind::Cart1s;
  const SampledState st = sample(c, Grid3D(Grid1D(6, 8.0, -4.0)));
  CHECK_THROWS_AS(write_csv(st, std::filesystem::temp_directory_path() / "stomps_unused.csv"), ResourceLimitError);
}
