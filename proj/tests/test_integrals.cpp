#include <catch_amalgamated.hpp>

#include <cmath>

#include "stomps/errors.hpp"
#include "stomps/integrals.hpp"

using namespace stomps;
using Catch::Approx;

namespace {

// dense discrete overlap of two grid functions
template <class F, class G>
double dense_cosine(const Grid1D& g, F f, G h) {
  double fg = 0.0, ff = 0.0, hh = 0.0;
  for (std::uint64_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    fg += f(x) * h(x);
    ff += f(x) * f(x);
    hh += h(x) * h(x);
  }
  return fg / std::sqrt(ff * hh);
}

}  // namespace

TEST_CASE("1D overlap equals the dense discrete sum") {
  for (int n = 4; n <= 11; ++n) {
    const Grid1D g(n, 16.0);
    const auto p = place_two_centers(1.4, g);
    auto fa = [&](double x) { return std::exp(-std::abs(x - p.center_a)); };
    auto fb = [&](double x) { return std::exp(-std::abs(x - p.center_b)); };
    const auto r = overlap_1d(1.0, 1.4, n);
    CHECK(r.physical_value == Approx(dense_cosine(g, fa, fb)).margin(1e-12));
    CHECK(r.snapped_distance == p.snapped_distance);
    REQUIRE(r.reference);
    CHECK(*r.reference == Approx(reference_overlap_1d_1s(1.0, p.snapped_distance)));
    CHECK(*r.relative_error == Approx(std::abs(r.physical_value - *r.reference) / std::abs(*r.reference)));
  }
}

TEST_CASE("1D kinetic energy equals the dense derivative sum") {
  for (double zeta : {1.0, 1.7})
    for (int n = 4; n <= 10; n += 2) {
      const Grid1D g(n, 16.0);
      const auto p = place_two_centers(1.4, g);
      double num = 0.0, na = 0.0, nb = 0.0;
      for (std::uint64_t j = 0; j < g.size(); ++j) {
        const double x = g.point(j);
        const double a = std::exp(-zeta * std::abs(x - p.center_a));
        const double b = std::exp(-zeta * std::abs(x - p.center_b));
        num += (x < p.center_a ? zeta : -zeta) * a * (x < p.center_b ? zeta : -zeta) * b;
        na += a * a;
        nb += b * b;
      }
      CHECK(kinetic_1d(zeta, 1.4, n).physical_value == Approx(0.5 * num / std::sqrt(na * nb)).margin(1e-12));
    }
}

TEST_CASE("1D integrals converge to the closed forms") {
  const auto s = overlap_1d(1.0, 1.4, 14);
  CHECK(*s.relative_error < 1e-4);
  const auto t = kinetic_1d(2.0, 1.4, 14);
  CHECK(t.physical_value == Approx(*t.reference).epsilon(2e-3));
}

TEST_CASE("tensor and circuit paths agree") {
  for (int n = 3; n <= 8; ++n) {
    CHECK(overlap_1d(1.0, 1.4, n, 16.0, Path::Circuit, 3).physical_value ==
          Approx(overlap_1d(1.0, 1.4, n).physical_value).margin(1e-10));
    CHECK(kinetic_1d(1.0, 1.4, n, 16.0, Path::Circuit).physical_value ==
          Approx(kinetic_1d(1.0, 1.4, n).physical_value).margin(1e-10));
  }
  CHECK(overlap_3d_spherical(5, 32.0, Path::Circuit).physical_value ==
        Approx(overlap_3d_spherical(5).physical_value).margin(1e-10));
  CHECK(overlap_3d_cartesian(PairKind::S1S1, 1.4, 3, 16.0, 1e-12, Path::Circuit).physical_value ==
        Approx(overlap_3d_cartesian(PairKind::S1S1, 1.4, 3).physical_value).margin(1e-10));
}

TEST_CASE("spherical overlap equals the dense radial sum and vanishes with resolution") {
  for (int n = 4; n <= 9; ++n) {
    const Grid1D g(n, 32.0);
    const double dense = dense_cosine(
        g, [](double r) { return r * std::exp(-r); }, [](double r) { return r * (2.0 - r) * std::exp(-r / 2); });
    const auto r = overlap_3d_spherical(n);
    CHECK(r.physical_value == Approx(dense).margin(1e-12));
    CHECK_FALSE(r.relative_error);
  }
  CHECK(std::abs(overlap_3d_spherical(10).physical_value) < std::abs(overlap_3d_spherical(6).physical_value));
}

TEST_CASE("Cartesian overlap equals the dense sum") {
  for (auto pair : {PairKind::S1S1, PairKind::S2S2, PairKind::S1S2}) {
    const Grid3D g(Grid1D(4, 16.0, -8.0));
    OrbitalSpec ket, bra;
    ket.kind = pair == PairKind::S1S1 ? OrbitalKind::Cart1s : OrbitalKind::Cart2s;
    bra.kind = pair == PairKind::S2S2 ? OrbitalKind::Cart2s : OrbitalKind::Cart1s;
    bra.center = {1.4, 0.0, 0.0};
    const double dense = sample(bra, g).amplitudes.dot(sample(ket, g).amplitudes);
    const auto r = overlap_3d_cartesian(pair, 1.4, 4);
    CHECK(r.physical_value == Approx(dense).margin(1e-11));
    REQUIRE(r.reference);
    CHECK(*r.reference == Approx(reference_overlap_3d(pair, 1.0, 1.4)));
  }
}

TEST_CASE("Cartesian overlap limits") {
  CHECK_THROWS_AS(overlap_3d_cartesian(PairKind::S1S1, 1.4, 8), ResourceLimitError);
  CHECK_THROWS_AS(overlap_3d_cartesian(PairKind::S1S1, 1.4, 5, 16.0, 1e-12, Path::Circuit), ResourceLimitError);
  CHECK_THROWS_AS(overlap_3d_cartesian(PairKind::S1S1, 9.0, 3), DomainError);
}

TEST_CASE("nuclear attraction equals the dense sum") {
  for (int n : {4, 6, 8, 10}) {
    const auto g = default_nuclear_geometry(1.4, n);
    const auto pc = resolve_potential_center(g.potential_center, Grid1D(n, 16.0));
    const auto r = nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, pc.value, 1.0, n);
    // independent dense sum: Delta x * sum psi_a V psi_b with psi = sqrt(zeta) e^{-zeta|x - R|}
    const Grid1D grid(n, 16.0);
    double s = 0.0;
    for (std::uint64_t j = 0; j < grid.size(); ++j) {
      const double x = grid.point(j);
      s += std::exp(-std::abs(x - g.center_a)) * (-1.0 / std::abs(x - pc.value)) * std::exp(-std::abs(x - g.center_b));
    }
    s *= grid.spacing();
    CHECK(r.physical_value == Approx(s).margin(1e-10));
    CHECK(nuclear_attraction_dense(1.0, {g.center_a, g.center_b}, pc.value, 1.0, n) == Approx(s).margin(1e-12));
  }
}

TEST_CASE("nuclear attraction edge cases") {
  const auto g = default_nuclear_geometry(1.4, 5);
  CHECK(nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, g.potential_center + 0.01, 0.0, 5).physical_value == 0.0);
  const Grid1D grid(5, 16.0);
  CHECK_THROWS_AS(nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, grid.point(3), 1.0, 5), ConfigurationError);
  const double z1 = nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, g.center_a, 1.0, 5).physical_value;
  const double z3 = nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, g.center_a, 3.0, 5).physical_value;
  CHECK(z3 == Approx(3.0 * z1));
  CHECK(nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, g.center_a, 1.0, 5, 16.0, 1e-12, Path::Circuit)
            .physical_value == Approx(z1).margin(1e-10));
}

TEST_CASE("convergence scans are ordered and parallel-safe") {
  ScanConfig c;
  const auto serial = convergence_scan(c, 4, 9, 1);
  const auto parallel = convergence_scan(c, 4, 9, 4);
  REQUIRE(serial.size() == 6);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].n_qubits == static_cast<int>(4 + i));
    CHECK(parallel[i].physical_value == serial[i].physical_value);
  }
  CHECK(to_json(serial[0]).at("n_qubits").get<int>() == 4);
  CHECK(path_from_string("circuit") == Path::Circuit);
  CHECK_THROWS_AS(path_from_string("magic"), DomainError);
}
