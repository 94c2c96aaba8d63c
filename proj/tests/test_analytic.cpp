#include <catch_amalgamated.hpp>

#include <cmath>

#include "stomps/analytic.hpp"
#include "stomps/errors.hpp"

using namespace stomps;
using Catch::Approx;

namespace {

// contract left * T_{b_0} ... T_{b_{n-1}} * right for a single grid point
double contract_point(const TransferMatrixFamily& f, std::uint64_t j) {
  const int n = static_cast<int>(f.sites.size());
  Eigen::RowVectorXd acc = f.left;
  for (int k = 0; k < n; ++k) acc = acc * f.sites[static_cast<std::size_t>(k)][(j >> (n - 1 - k)) & 1U];
  return acc.dot(f.right);
}

void check_family(const TransferMatrixFamily& f, const Eigen::VectorXd& raw) {
  for (Eigen::Index j = 0; j < raw.size(); ++j)
    REQUIRE(contract_point(f, static_cast<std::uint64_t>(j)) == Approx(raw[j]).epsilon(1e-11).margin(1e-300));
  CHECK(norm_via_transfer(f) == Approx(raw.norm()).epsilon(1e-12));
}

void check_mps(const Mps& m, const Eigen::VectorXd& raw) {
  CHECK(m.norm == Approx(raw.norm()).epsilon(1e-11));
  CHECK((reconstruct(m) * m.norm - raw).norm() <= 1e-11 * raw.norm());
  CHECK(m.right_canonical_defect() < 1e-10);
}

OrbitalSpec spec(OrbitalKind k, double center = 0.0) {
  OrbitalSpec s;
  s.kind = k;
  s.center[0] = center;
  return s;
}

}  // namespace

TEST_CASE("exponential family has bond dimension one") {
  const Grid1D g(8, 16.0);
  const auto f = exp_family(1.0, g);
  CHECK(f.bond_dim() == 1);
  check_family(f, sample_raw(spec(OrbitalKind::Exp), g));
  const Mps m = build_exp(1.0, g);
  CHECK(m.chi_max() == 1);
  check_mps(m, sample_raw(spec(OrbitalKind::Exp), g));
}

TEST_CASE("polynomial times exponential uses degree plus one states") {
  const Grid1D g(7, 10.0, -2.0);
  const std::vector<double> c{0.5, -1.0, 0.25, 0.125};
  const auto f = polynomial_family(c, 0.8, g);
  CHECK(f.bond_dim() == 4);
  CHECK(f.degree == 3);
  Eigen::VectorXd raw(128);
  for (int j = 0; j < 128; ++j) {
    const double x = g.point(static_cast<std::uint64_t>(j)) - g.origin();
    raw[j] = (c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x) * std::exp(-0.8 * x);
  }
  check_family(f, raw);
  CHECK(to_mps(f).chi_max() == 4);
}

TEST_CASE("radial families match sampled orbitals") {
  const Grid1D g(8, 32.0);
  OrbitalSpec s = spec(OrbitalKind::Sto2s);
  s.zeta = 0.5;
  check_family(sto2s_family(0.5, g), sample_raw(s, g));
  check_mps(build_sto2s(0.5, g), sample_raw(s, g));
  CHECK(build_sto2s(0.5, g).chi_max() == 2);

  OrbitalSpec h = spec(OrbitalKind::H2s);
  h.a = 1.3;
  // the transfer construction carries three states; the function itself has rank two
  CHECK(h2s_family(1.3, g).bond_dim() == 3);
  check_family(h2s_family(1.3, g), sample_raw(h, g));
  check_mps(build_h2s(1.3, g), sample_raw(h, g));
  CHECK(build_h2s(1.3, g).chi_max() == 2);

  h.kind = OrbitalKind::H2sJacobian;
  check_family(h2s_jacobian_family(1.3, g), sample_raw(h, g));
  check_mps(build_h2s_jacobian(1.3, g), sample_raw(h, g));
  CHECK(build_h2s_jacobian(1.3, g).chi_max() == 3);
}

TEST_CASE("1s cusp automaton at every cusp position") {
  const Grid1D g(6, 16.0, -8.0);
  for (std::uint64_t c = 0; c < g.size(); ++c) {
    OrbitalSpec s = spec(OrbitalKind::Sto1s, cusp_coordinate(c, g));
    s.zeta = 1.3;
    const Eigen::VectorXd raw = sample_raw(s, g);
    check_family(sto1s_family(1.3, c, g), raw);
    const Mps m = build_sto1s(1.3, c, g);
    check_mps(m, raw);
    // aligned cusps need at most two states, the rest three
    CHECK(m.chi_max() <= 3);
    if (c == 0 || c == g.size() / 2) CHECK(m.chi_max() == (c == 0 ? 1 : 2));

    s.kind = OrbitalKind::Sto1sDeriv;
    const Eigen::VectorXd draw = sample_raw(s, g);
    check_family(sto1s_family(1.3, c, g, true), draw);
    check_mps(build_sto1s_derivative(1.3, c, g), draw);
  }
}

TEST_CASE("analytic and numerical decompositions agree") {
  const Grid1D g(10, 16.0);
  const auto c = g.size() / 2 + 3;
  OrbitalSpec s = spec(OrbitalKind::Sto1s, cusp_coordinate(c, g));
  const Mps numeric = decompose(sample(s, g), 1e-12);
  const Mps analytic = build_sto1s(1.0, c, g);
  CHECK(std::abs(inner_product(numeric, analytic)) == Approx(1.0).epsilon(1e-12));
  CHECK(numeric.chi_max() == analytic.chi_max());
}

TEST_CASE("analytic builders reject bad input") {
  const Grid1D g(4, 16.0);
  CHECK_THROWS_AS(exp_family(0.0, g), DomainError);
  CHECK_THROWS_AS(h2s_family(-1.0, g), DomainError);
  CHECK_THROWS_AS(sto1s_family(1.0, 16, g), DomainError);
  CHECK_THROWS_AS(polynomial_family({}, 1.0, g), DomainError);
  CHECK_THROWS_AS(to_mps(polynomial_family({0.0}, 1.0, g)), DomainError);
  TransferMatrixFamily broken = exp_family(1.0, g);
  broken.right = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(broken.validate(), PreconditionError);
}
