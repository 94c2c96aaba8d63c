#include "stomps/orbitals.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <type_traits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "io_util.hpp"
#include "stomps/errors.hpp"

namespace stomps {

namespace {

constexpr std::array<const char*, 9> kKindNames = {"exp",  "sto1s",        "sto1s_deriv",
                                                   "sto2s", "h2s",         "h2s_jacobian",
                                                   "vpsi", "cart1s",       "cart2s"};

double radial_value(const OrbitalSpec& s, double r) {
  switch (s.kind) {
    case OrbitalKind::Sto1s:
    case OrbitalKind::Cart1s:
      return std::exp(-s.zeta * r);
    case OrbitalKind::Sto2s:
      return r * std::exp(-s.zeta * r);
    case OrbitalKind::H2s:
    case OrbitalKind::Cart2s:
      return (2.0 - r / s.a) * std::exp(-r / (2.0 * s.a));
    case OrbitalKind::H2sJacobian:
      return r * (2.0 - r / s.a) * std::exp(-r / (2.0 * s.a));
    default:
      throw DomainError("not a radial orbital kind");
  }
}

// Pole test used by the VPsi sampler; tolerance is relative to the spacing.
bool hits_grid_point(double c, const Grid1D& grid) {
  const double t = (c - grid.origin()) / grid.spacing();
  const double nearest = std::round(t);
  return nearest >= 0.0 && nearest < static_cast<double>(grid.size()) && std::abs(t - nearest) < 1e-9;
}

}  // namespace

std::string to_string(OrbitalKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

OrbitalKind orbital_kind_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (name == kKindNames[i]) return static_cast<OrbitalKind>(i);
  throw DomainError(fmt::format("unknown orbital kind '{}'", name));
}

bool is_cartesian(OrbitalKind kind) { return kind == OrbitalKind::Cart1s || kind == OrbitalKind::Cart2s; }

void OrbitalSpec::validate() const {
  if (!(zeta > 0.0)) throw DomainError(fmt::format("zeta must be positive, got {}", zeta));
  if (!(a > 0.0)) throw DomainError(fmt::format("a must be positive, got {}", a));
}

double evaluate(const OrbitalSpec& spec, double x) {
  spec.validate();
  const double r = std::abs(x - spec.center[0]);
  switch (spec.kind) {
    case OrbitalKind::Exp:
      return std::exp(-spec.zeta * (x - spec.center[0]));
    case OrbitalKind::Sto1sDeriv: {
      // x >= R counts as the decaying side
      const double v = spec.zeta * std::exp(-spec.zeta * r);
      return x < spec.center[0] ? v : -v;
    }
    case OrbitalKind::VPsi: {
      const double rc = std::abs(x - spec.potential_center);
      if (rc == 0.0) throw DomainError(fmt::format("Coulomb potential is singular at x = {}", x));
      return -spec.Z / rc * std::exp(-spec.zeta * r);
    }
    case OrbitalKind::Cart1s:
    case OrbitalKind::Cart2s:
      throw DomainError(fmt::format("{} needs a 3D point", to_string(spec.kind)));
    default:
      return radial_value(spec, r);
  }
}

double evaluate(const OrbitalSpec& spec, const std::array<double, 3>& p) {
  if (!is_cartesian(spec.kind)) return evaluate(spec, p[0]);
  spec.validate();
  const double dx = p[0] - spec.center[0];
  const double dy = p[1] - spec.center[1];
  const double dz = p[2] - spec.center[2];
  return radial_value(spec, std::sqrt(dx * dx + dy * dy + dz * dz));
}

int SampledState::n_total() const {
  return std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Grid1D>)
          return g.n_qubits();
        else
          return g.n_total();
      },
      grid);
}

Eigen::VectorXd sample_raw(const OrbitalSpec& spec, const Grid1D& grid) {
  spec.validate();
  if (is_cartesian(spec.kind))
    throw DomainError(fmt::format("{} must be sampled on a 3D grid", to_string(spec.kind)));
  if (spec.kind == OrbitalKind::VPsi && hits_grid_point(spec.potential_center, grid))
    throw ConfigurationError(fmt::format(
        "potential center {} coincides with a grid point; shift it by half a spacing ({})",
        spec.potential_center, grid.spacing() / 2));
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
  for (std::uint64_t j = 0; j < grid.size(); ++j) v[static_cast<Eigen::Index>(j)] = evaluate(spec, grid.point(j));
  return v;
}

Eigen::VectorXd sample_raw(const OrbitalSpec& spec, const Grid3D& grid) {
  spec.validate();
  if (!is_cartesian(spec.kind))
    throw DomainError(fmt::format("{} is a 1D orbital kind", to_string(spec.kind)));
  const Grid1D& g = grid.per_coord();
  const std::uint64_t m = g.size();
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
  for (std::uint64_t jx = 0; jx < m; ++jx)
    for (std::uint64_t jy = 0; jy < m; ++jy)
      for (std::uint64_t jz = 0; jz < m; ++jz)
        v[static_cast<Eigen::Index>(grid.flatten_index(jx, jy, jz))] =
            evaluate(spec, std::array<double, 3>{g.point(jx), g.point(jy), g.point(jz)});
  return v;
}

SampledState make_state(Eigen::VectorXd raw, AnyGrid grid) {
  const double nrm = raw.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw DomainError("sampled function has zero or non-finite norm on this grid");
  raw /= nrm;
  return SampledState{std::move(raw), nrm, std::move(grid)};
}

SampledState sample(const OrbitalSpec& spec, const Grid1D& grid) { return make_state(sample_raw(spec, grid), grid); }

SampledState sample(const OrbitalSpec& spec, const Grid3D& grid) { return make_state(sample_raw(spec, grid), grid); }

PotentialCenter resolve_potential_center(double center, const Grid1D& grid) {
  if (hits_grid_point(center, grid)) return {center + grid.spacing() / 2, true};
  return {center, false};
}

double reference_overlap_1d_1s(double zeta, double d) {
  if (d < 0.0) throw DomainError("distance must be non-negative");
  return (1.0 + zeta * d) * std::exp(-zeta * d);
}

double reference_kinetic_1d_1s(double zeta, double d) {
  if (d < 0.0) throw DomainError("distance must be non-negative");
  return 0.5 * zeta * zeta * std::exp(-zeta * d) * (1.0 - zeta * d);
}

std::string to_string(PairKind pair) {
  switch (pair) {
    case PairKind::S1S1:
      return "1s1s";
    case PairKind::S2S2:
      return "2s2s";
    default:
      return "1s2s";
  }
}

PairKind pair_kind_from_string(const std::string& name) {
  if (name == "1s1s") return PairKind::S1S1;
  if (name == "2s2s") return PairKind::S2S2;
  if (name == "1s2s") return PairKind::S1S2;
  throw DomainError(fmt::format("unknown orbital pair '{}' (expected 1s1s, 2s2s or 1s2s)", name));
}

double reference_overlap_3d(PairKind pair, double zeta, double d, double a) {
  if (d < 0.0) throw DomainError("distance must be non-negative");
  if (pair == PairKind::S1S1) {
    const double t = zeta * d;
    return std::exp(-t) * (1.0 + t + t * t / 3.0);
  }
  using boost::math::quadrature::gauss_kronrod;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kTol = 1e-11;
  const std::function<double(double)> f1 = [zeta](double r) { return std::exp(-zeta * r); };
  const std::function<double(double)> f2 = [a](double r) { return (2.0 - r / a) * std::exp(-r / (2.0 * a)); };
  const auto& fa = pair == PairKind::S2S2 ? f2 : f1;
  const auto& fb = f2;

  auto norm2 = [&](const std::function<double(double)>& f) {
    return gauss_kronrod<double, 31>::integrate(
        [&](double r) { return f(r) * f(r) * 4.0 * M_PI * r * r; }, 0.0, kInf, 15, kTol);
  };
  double overlap = 0.0;
  if (d == 0.0) {
    overlap = gauss_kronrod<double, 31>::integrate(
        [&](double r) { return fa(r) * fb(r) * 4.0 * M_PI * r * r; }, 0.0, kInf, 15, kTol);
  } else {
    // prolate spheroidal coordinates: r_a = d(mu+nu)/2, r_b = d(mu-nu)/2
    auto outer = [&](double mu) {
      auto inner = [&](double nu) {
        return fa(d * (mu + nu) / 2) * fb(d * (mu - nu) / 2) * (mu * mu - nu * nu);
      };
      return gauss_kronrod<double, 31>::integrate(inner, -1.0, 1.0, 15, kTol);
    };
    overlap = gauss_kronrod<double, 31>::integrate(outer, 1.0, kInf, 15, kTol) * 2.0 * M_PI * d * d * d / 8.0;
  }
  return overlap / std::sqrt(norm2(fa) * norm2(fb));
}

nlohmann::json to_json(const OrbitalSpec& spec) {
  return {{"kind", to_string(spec.kind)},
          {"zeta", spec.zeta},
          {"center", spec.center},
          {"a", spec.a},
          {"potential_center", spec.potential_center},
          {"Z", spec.Z}};
}

OrbitalSpec orbital_spec_from_json(const nlohmann::json& j) {
  OrbitalSpec s;
  try {
    s.kind = orbital_kind_from_string(j.at("kind").get<std::string>());
    s.zeta = j.value("zeta", 1.0);
    if (j.contains("center")) {
      const auto& c = j.at("center");
      if (c.is_number())
        s.center = {c.get<double>(), 0.0, 0.0};
      else
        s.center = c.get<std::array<double, 3>>();
    }
    s.a = j.value("a", 1.0);
    s.potential_center = j.value("potential_center", 0.0);
    s.Z = j.value("Z", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed orbital JSON: {}", e.what()));
  }
  s.validate();
  return s;
}

void write_binary(const SampledState& state, const std::filesystem::path& path) {
  auto os = detail::open_out(path, true);
  detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(state.n_total()));
  detail::put<double>(os, state.norm);
  os.write(reinterpret_cast<const char*>(state.amplitudes.data()),
           static_cast<std::streamsize>(state.amplitudes.size() * sizeof(double)));
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

SampledState read_binary_state(const std::filesystem::path& path, AnyGrid grid) {
  auto is = detail::open_in(path, true);
  const auto n = detail::get<std::uint64_t>(is);
  if (n > 30) throw IoError(fmt::format("'{}': implausible qubit count {}", path.string(), n));
  SampledState s{Eigen::VectorXd(Eigen::Index{1} << n), detail::get<double>(is), std::move(grid)};
  if (static_cast<std::uint64_t>(s.n_total()) != n)
    throw IoError(fmt::format("'{}' holds {} qubits but the grid has {}", path.string(), n, s.n_total()));
  is.read(reinterpret_cast<char*>(s.amplitudes.data()),
          static_cast<std::streamsize>(s.amplitudes.size() * sizeof(double)));
  if (!is) throw IoError(fmt::format("'{}' is truncated", path.string()));
  return s;
}

void write_csv(const SampledState& state, const std::filesystem::path& path) {
  if (state.n_total() > 16) throw ResourceLimitError("CSV export is limited to 16 qubits");
  auto os = detail::open_out(path);
  if (const auto* g = std::get_if<Grid1D>(&state.grid)) {
    os << "index,x,amplitude\n";
    for (std::uint64_t j = 0; j < g->size(); ++j)
      os << fmt::format("{},{:.12g},{:.12g}\n", j, g->point(j), state.amplitudes[static_cast<Eigen::Index>(j)]);
  } else {
    const auto& g3 = std::get<Grid3D>(state.grid);
    os << "index,x,y,z,amplitude\n";
    for (std::uint64_t j = 0; j < g3.size(); ++j) {
      const auto p = g3.point(j);
      os << fmt::format("{},{:.12g},{:.12g},{:.12g},{:.12g}\n", j, p[0], p[1], p[2],
                        state.amplitudes[static_cast<Eigen::Index>(j)]);
    }
  }
}

}  // namespace stomps
