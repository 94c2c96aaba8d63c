// Command-line front end: one subcommand per pipeline plus `tables`, which
// regenerates every table in one run.
//
// Exit status: 0 success, 1 I/O or check failure, 2 usage or invalid
// parameters, 3 resource ceiling exceeded.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stomps/analytic.hpp"
#include "stomps/circuit.hpp"
#include "stomps/entanglement.hpp"
#include "stomps/errors.hpp"
#include "stomps/integrals.hpp"
#include "stomps/mps.hpp"
#include "stomps/report.hpp"

namespace fs = std::filesystem;
using namespace stomps;

namespace {

struct Common {
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct Params {
  double zeta = 1.0;
  double distance = 1.4;
  int n = 5;
  std::optional<int> n_min;
  std::optional<int> n_max;
  double length = 16.0;
  double threshold = 1e-12;
  std::string via = "tensor";
  std::string pair = "1s1s";
  double Z = 1.0;
  std::optional<double> potential_center;
  bool auto_shift = false;
  std::vector<double> thresholds{1e-12, 1e-9, 1e-6};
  std::vector<double> zetas{1.0, 2.0, 4.0, 6.0};
  double zeta2 = 1.0;
  std::string kernel = "coulomb";
  std::string out_dir = "tables";
};

void write_table(const ReportTable& t, const Common& c) {
  const Format f = format_from_string(c.format);
  if (c.output.empty()) {
    std::cout << (f == Format::Csv ? to_csv(t) : to_json(t).dump(2) + "\n");
    return;
  }
  emit_report(t, f, c.output);
}

std::string percent(const std::optional<double>& e) { return e ? fmt::format("{:.2f}%", 100.0 * *e) : "n/a"; }
std::string value_or_na(const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : "n/a"; }

void print_integrals(const std::string& name, const std::vector<IntegralResult>& rs) {
  for (const auto& r : rs)
    std::cout << fmt::format("{} n={} d={:.6g} value={:.6g} reference={} error={}\n", name, r.n_qubits,
                             r.snapped_distance, r.physical_value, value_or_na(r.reference),
                             percent(r.relative_error));
}

std::pair<int, int> n_range(const Params& p, int fallback) {
  if (p.n_min || p.n_max) {
    const int lo = p.n_min.value_or(p.n_max.value_or(fallback));
    return {lo, p.n_max.value_or(lo)};
  }
  return {p.n, p.n};
}

std::vector<IntegralResult> run_integral(ScanKind kind, const Params& p, const Common& c) {
  ScanConfig cfg;
  cfg.kind = kind;
  cfg.zeta = p.zeta;
  cfg.distance = p.distance;
  cfg.length = p.length;
  cfg.threshold = p.threshold;
  cfg.pair = pair_kind_from_string(p.pair);
  cfg.via = path_from_string(p.via);
  cfg.seed = c.seed;
  const auto [lo, hi] = n_range(p, p.n);
  return convergence_scan(cfg, lo, hi, c.jobs);
}

std::vector<IntegralResult> run_nuclear(const Params& p, const Common& c) {
  const auto [lo, hi] = n_range(p, p.n);
  std::vector<IntegralResult> out;
  for (int n = lo; n <= hi; ++n) {
    const Grid1D grid(n, p.length);
    NuclearGeometry g = default_nuclear_geometry(p.distance, n, p.length);
    if (p.potential_center) g.potential_center = *p.potential_center;
    const PotentialCenter pc = resolve_potential_center(g.potential_center, grid);
    if (pc.shifted) {
      if (!p.auto_shift)
        throw ConfigurationError(fmt::format(
            "potential center {} lies on a grid point at n={}; move it by half a spacing ({}) or pass --auto-shift",
            g.potential_center, n, grid.spacing() / 2));
      std::cout << fmt::format("nuclear1d n={}: potential center shifted {} -> {}\n", n, g.potential_center, pc.value);
    }
    auto r = nuclear_attraction_1d(p.zeta, {g.center_a, g.center_b}, pc.value, p.Z, n, p.length, p.threshold,
                                   path_from_string(p.via), c.seed);
    const double dense = nuclear_attraction_dense(p.zeta, {g.center_a, g.center_b}, pc.value, p.Z, n, p.length);
    std::cout << fmt::format("nuclear1d n={} dense-sum={:.12g} |pipeline - dense|={:.3g}\n", n, dense,
                             std::abs(r.physical_value - dense));
    out.push_back(r);
  }
  return out;
}

int run_roundtrip(const Params& p, const Common& c) {
  if (p.n < 1 || p.n > kDenseQubitCeiling)
    throw ResourceLimitError(fmt::format("roundtrip-check supports 1..{} qubits", kDenseQubitCeiling));
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(Eigen::Index{1} << p.n);
  for (auto& x : v) x = normal(rng);
  v.normalize();
  const Mps m = decompose(v, 0.0);
  const double fidelity = std::abs(reconstruct(m).dot(v));
  const bool ok = fidelity >= 1.0 - 1e-12;
  std::cout << fmt::format("roundtrip-check n={} seed={} chi_max={} fidelity={:.15f} {}\n", p.n, c.seed,
                           m.chi_max(), fidelity, ok ? "ok" : "FAILED");
  if (!c.output.empty()) {
    ReportTable t{{"n", "seed", "chi_max", "fidelity"},
                  {{std::int64_t{p.n}, static_cast<std::int64_t>(c.seed), std::int64_t{m.chi_max()}, fidelity}}};
    emit_report(t, format_from_string(c.format), c.output);
  }
  return ok ? 0 : 1;
}

ReportTable two_electron_table(int lo, int hi, const Params& p) {
  static const std::map<std::string, Kernel> kernels{
      {"coulomb", Kernel::Coulomb}, {"bare", Kernel::Bare}, {"unit", Kernel::Unit}};
  ReportTable t{{"N", "rank", "ratio", "kernel"}, {}};
  for (int n = lo; n <= hi; ++n) {
    const auto r = two_electron_rank(n, {p.zeta, p.zeta2}, p.distance, p.length, kernels.at(p.kernel));
    std::cout << fmt::format("two-electron N={} rank={} ratio={:.4f}\n", r.n_points, r.rank, r.ratio);
    t.rows.push_back({std::int64_t{r.n_points}, std::int64_t{r.rank}, r.ratio, p.kernel});
  }
  return t;
}

ReportTable analytic_chi_table(int n) {
  // numerical decomposition of sampled states next to the transfer-matrix constructions
  const Grid1D line(n, 16.0);
  const Grid1D radial(n, 32.0);
  const auto mid = line.size() / 2;
  ReportTable t{{"kind", "n", "chi_numerical", "transfer_states", "chi_analytic"}, {}};
  auto add = [&](OrbitalKind kind, const Grid1D& g, OrbitalSpec s, const TransferMatrixFamily* family) {
    s.kind = kind;
    const Mps m = decompose(sample(s, g), 1e-12);
    Cell states = std::monostate{}, analytic = std::monostate{};
    if (family) {
      states = std::int64_t{family->bond_dim()};
      analytic = std::int64_t{to_mps(*family).chi_max()};
    }
    t.rows.push_back({to_string(kind), std::int64_t{n}, std::int64_t{m.chi_max()}, states, analytic});
  };
  OrbitalSpec s;
  auto f = exp_family(1.0, line);
  add(OrbitalKind::Exp, line, s, &f);
  s.center[0] = cusp_coordinate(mid, line);
  f = sto1s_family(1.0, mid, line);
  add(OrbitalKind::Sto1s, line, s, &f);
  f = sto1s_family(1.0, mid, line, true);
  add(OrbitalKind::Sto1sDeriv, line, s, &f);
  s.center[0] = 0.0;
  f = sto2s_family(1.0, radial);
  add(OrbitalKind::Sto2s, radial, s, &f);
  f = h2s_family(1.0, radial);
  add(OrbitalKind::H2s, radial, s, &f);
  f = h2s_jacobian_family(1.0, radial);
  add(OrbitalKind::H2sJacobian, radial, s, &f);
  const NuclearGeometry g = default_nuclear_geometry(1.4, n);
  s.center[0] = g.center_b;
  s.potential_center = g.potential_center;
  add(OrbitalKind::VPsi, line, s, nullptr);
  return t;
}

ReportTable orderings_table(int lo, int hi, const Params& p) {
  ReportTable t{{"n", "total_qubits", "chi_grouped", "chi_interleaved"}, {}};
  for (int n = lo; n <= hi; ++n) {
    const auto [g, i] = compare_orderings(n, p.zeta, p.length, p.threshold);
    std::cout << fmt::format("orderings n={} grouped={} interleaved={}\n", n, g.chi_max, i.chi_max);
    t.rows.push_back({std::int64_t{n}, std::int64_t{3 * n}, std::int64_t{g.chi_max}, std::int64_t{i.chi_max}});
  }
  return t;
}

void print_scan(const std::string& name, const std::vector<ScanRecord>& rs) {
  for (const auto& r : rs)
    std::cout << fmt::format("{} n={} zeta={:g} threshold={:g} chi_max={} chi_xy={}\n", name, r.n_per_coord,
                             r.zeta, r.threshold, r.chi_max, r.chi_xy ? fmt::format("{}", *r.chi_xy) : "n/a");
}

int run_tables(const Params& p, const Common& c) {
  const fs::path dir = p.out_dir;
  fs::create_directories(dir);
  const Format f = format_from_string(c.format);
  const std::string ext = f == Format::Csv ? ".csv" : ".json";
  auto emit = [&](const std::string& stem, const ReportTable& t) {
    emit_report(t, f, dir / (stem + ext));
    std::cout << fmt::format("wrote {}\n", (dir / (stem + ext)).string());
  };
  ScanConfig cfg;
  cfg.seed = c.seed;
  cfg.kind = ScanKind::Overlap1D;
  emit("table1_overlap", integral_table(convergence_scan(cfg, 4, 10, c.jobs)));
  cfg.kind = ScanKind::Kinetic1D;
  emit("table1_kinetic", integral_table(convergence_scan(cfg, 4, 10, c.jobs)));
  {
    std::vector<IntegralResult> rs;
    for (int n : {4, 6, 8}) {
      const NuclearGeometry g = default_nuclear_geometry(1.4, n);
      rs.push_back(nuclear_attraction_1d(1.0, {g.center_a, g.center_b}, g.potential_center, 1.0, n));
    }
    emit("table1_nuclear", integral_table(rs));
  }
  cfg.kind = ScanKind::Spherical;
  cfg.length = 32.0;
  emit("table2_spherical", integral_table(convergence_scan(cfg, 4, 8, c.jobs)));
  cfg.kind = ScanKind::Cartesian;
  cfg.length = 16.0;
  cfg.pair = PairKind::S1S1;
  emit("table2_cartesian_1s1s", integral_table(convergence_scan(cfg, 3, 6, c.jobs)));
  cfg.pair = PairKind::S2S2;
  emit("table2_cartesian_2s2s", integral_table(convergence_scan(cfg, 4, 6, c.jobs)));
  cfg.pair = PairKind::S1S2;
  cfg.length = 32.0;
  cfg.threshold = 1e-6;
  emit("table2_cartesian_1s2s", integral_table(convergence_scan(cfg, 6, 6, c.jobs)));
  emit("table4_bond_scaling", scan_table(scan_resolution(1.0, 32.0, 4, 7, {1e-12, 1e-9, 1e-6}, c.jobs)));
  emit("analytic_chi", analytic_chi_table(8));
  Params op = p;
  op.zeta = 1.0;
  op.length = 32.0;
  op.threshold = 1e-12;
  emit("orderings", orderings_table(2, 5, op));
  emit("zeta_scan", scan_table(scan_zeta({1.0, 2.0, 4.0, 6.0}, 7, 32.0, 1e-12, c.jobs)));
  Params tp;
  tp.length = 32.0;
  emit("two_electron", two_electron_table(3, 10, tp));
  emit("fourier", ReportTable{{"N", "fraction_99"}, {{std::int64_t{1024}, fourier_weight(10)}}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPS encoding of Slater-type orbitals: integrals and entanglement studies"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags override file values, which override defaults");
  app.footer("Exit status: 0 ok, 1 I/O or failed check, 2 invalid parameters, 3 resource ceiling exceeded.");

  Common common;
  Params p;
  app.add_option("--seed", common.seed, "Seed for unitary completion and random test states")->capture_default_str();
  app.add_option("--jobs", common.jobs, "Parallel scan points")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("-o,--output", common.output, "Output file (default: standard output)");
  app.add_option("--format", common.format, "Output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  auto add_range = [&](CLI::App* s, int default_n) {
    p.n = default_n;
    s->add_option("--n", p.n, "Qubits (per coordinate for 3D)")->capture_default_str();
    s->add_option("--n-min", p.n_min, "First qubit count of a scan");
    s->add_option("--n-max", p.n_max, "Last qubit count of a scan");
  };
  auto add_1d = [&](CLI::App* s) {
    s->add_option("--zeta", p.zeta, "Orbital exponent")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--distance", p.distance, "Center separation (a.u.), snapped to the grid")->capture_default_str();
    s->add_option("--length", p.length, "Box length (a.u.)")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--via", p.via, "Evaluation path")->capture_default_str()->check(CLI::IsMember({"tensor", "circuit"}));
  };

  auto* overlap1d = app.add_subcommand("overlap1d", "1D 1s-1s overlap (ζ=1, L=16 by default)");
  add_1d(overlap1d);
  add_range(overlap1d, 5);
  auto* kinetic1d = app.add_subcommand("kinetic1d", "1D 1s-1s kinetic energy from derivative states");
  add_1d(kinetic1d);
  add_range(kinetic1d, 5);
  auto* nuclear1d = app.add_subcommand("nuclear1d", "1D nuclear attraction V_AB with the Coulomb product state");
  add_1d(nuclear1d);
  add_range(nuclear1d, 6);
  nuclear1d->add_option("--Z", p.Z, "Nuclear charge")->capture_default_str();
  nuclear1d->add_option("--potential-center", p.potential_center, "Potential center (default: center A)");
  nuclear1d->add_option("--threshold", p.threshold, "SVD threshold")->capture_default_str()->check(CLI::NonNegativeNumber);
  nuclear1d->add_flag("--auto-shift", p.auto_shift, "Move an on-grid potential center by half a spacing");

  auto* spherical = app.add_subcommand("overlap3d-spherical", "Radial <1s|2s> overlap (L=32 by default)");
  add_range(spherical, 6);
  spherical->add_option("--length", p.length, "Radial box length (a.u.)")->default_str("32");
  spherical->add_option("--via", p.via, "Evaluation path")->check(CLI::IsMember({"tensor", "circuit"}));

  auto* cartesian = app.add_subcommand("overlap3d-cartesian", "3D Cartesian overlap on a grouped grid");
  add_1d(cartesian);
  add_range(cartesian, 4);
  cartesian->add_option("--pair", p.pair, "Orbital pair")->capture_default_str()->check(CLI::IsMember({"1s1s", "2s2s", "1s2s"}));
  cartesian->add_option("--threshold", p.threshold, "SVD threshold")->capture_default_str()->check(CLI::NonNegativeNumber);

  auto* scan_bonds = app.add_subcommand("scan-bonds", "Bond dimensions of the 3D 1s state over resolution and threshold");
  scan_bonds->add_option("--zeta", p.zeta, "Orbital exponent")->capture_default_str()->check(CLI::PositiveNumber);
  scan_bonds->add_option("--length", p.length, "Box length (a.u.)")->default_str("32");
  scan_bonds->add_option("--n-min", p.n_min, "First qubits per coordinate")->default_str("4");
  scan_bonds->add_option("--n-max", p.n_max, "Last qubits per coordinate")->default_str("7");
  scan_bonds->add_option("--thresholds", p.thresholds, "Comma-separated thresholds")->delimiter(',')->capture_default_str();

  auto* scan_zeta_cmd = app.add_subcommand("scan-zeta", "Bond dimensions of the 3D 1s state over ζ");
  scan_zeta_cmd->add_option("--zetas", p.zetas, "Comma-separated exponents")->delimiter(',')->capture_default_str();
  scan_zeta_cmd->add_option("--n", p.n, "Qubits per coordinate")->default_str("7");
  scan_zeta_cmd->add_option("--length", p.length, "Box length (a.u.)")->default_str("32");
  scan_zeta_cmd->add_option("--threshold", p.threshold, "SVD threshold")->capture_default_str();

  auto* orderings = app.add_subcommand("orderings", "Grouped versus interleaved qubit ordering");
  orderings->add_option("--n-min", p.n_min, "First qubits per coordinate")->default_str("2");
  orderings->add_option("--n-max", p.n_max, "Last qubits per coordinate")->default_str("5");
  orderings->add_option("--zeta", p.zeta, "Orbital exponent")->capture_default_str();
  orderings->add_option("--length", p.length, "Box length (a.u.)")->default_str("32");
  orderings->add_option("--threshold", p.threshold, "SVD threshold")->capture_default_str();

  auto* profile = app.add_subcommand("profile", "Full bond-dimension profile of the 3D 1s state");
  profile->add_option("--n", p.n, "Qubits per coordinate")->default_str("7");
  profile->add_option("--zeta", p.zeta, "Orbital exponent")->capture_default_str();
  profile->add_option("--length", p.length, "Box length (a.u.)")->default_str("32");
  profile->add_option("--threshold", p.threshold, "SVD threshold")->capture_default_str();

  auto* two_electron = app.add_subcommand("two-electron", "Schmidt rank of the 1D two-electron integrand");
  two_electron->add_option("--n-min", p.n_min, "First log2 N")->default_str("3");
  two_electron->add_option("--n-max", p.n_max, "Last log2 N")->default_str("10");
  two_electron->add_option("--zeta1", p.zeta, "Exponent of electron 1")->capture_default_str();
  two_electron->add_option("--zeta2", p.zeta2, "Exponent of electron 2")->capture_default_str();
  two_electron->add_option("--separation", p.distance, "Orbital separation (a.u.)")->capture_default_str();
  two_electron->add_option("--length", p.length, "Box length (a.u.)")->default_str("32");
  two_electron->add_option("--kernel", p.kernel, "Kernel")->capture_default_str()->check(CLI::IsMember({"coulomb", "bare", "unit"}));

  auto* fourier = app.add_subcommand("fourier", "Fraction of Fourier modes carrying 99% of the 1/x spectrum");
  fourier->add_option("--n", p.n, "log2 N")->default_str("10");
  fourier->add_option("--length", p.length, "Interval length (a.u.)")->capture_default_str();

  auto* roundtrip = app.add_subcommand("roundtrip-check", "Lossless decompose/reconstruct check on a random state");
  roundtrip->add_option("--n", p.n, "Qubits")->default_str("12");

  auto* tables = app.add_subcommand("tables", "Regenerate every table into a directory");
  tables->add_option("--output-dir", p.out_dir, "Destination directory")->capture_default_str();

  // per-command defaults that differ from the shared ones
  scan_bonds->preparse_callback([&](std::size_t) { p.length = 32.0; });
  scan_zeta_cmd->preparse_callback([&](std::size_t) { p.length = 32.0; p.n = 7; });
  orderings->preparse_callback([&](std::size_t) { p.length = 32.0; });
  profile->preparse_callback([&](std::size_t) { p.length = 32.0; p.n = 7; });
  two_electron->preparse_callback([&](std::size_t) { p.length = 32.0; });
  spherical->preparse_callback([&](std::size_t) { p.length = 32.0; p.n = 6; });
  fourier->preparse_callback([&](std::size_t) { p.n = 10; });
  roundtrip->preparse_callback([&](std::size_t) { p.n = 12; });
  overlap1d->preparse_callback([&](std::size_t) { p.n = 5; });
  kinetic1d->preparse_callback([&](std::size_t) { p.n = 5; });
  nuclear1d->preparse_callback([&](std::size_t) { p.n = 6; });
  cartesian->preparse_callback([&](std::size_t) { p.n = 4; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*overlap1d || *kinetic1d || *spherical || *cartesian) {
      const ScanKind kind = *overlap1d ? ScanKind::Overlap1D
                            : *kinetic1d ? ScanKind::Kinetic1D
                            : *spherical ? ScanKind::Spherical
                                         : ScanKind::Cartesian;
      const std::string name = app.get_subcommands().front()->get_name();
      const auto rs = run_integral(kind, p, common);
      print_integrals(name, rs);
      write_table(integral_table(rs), common);
    } else if (*nuclear1d) {
      const auto rs = run_nuclear(p, common);
      print_integrals("nuclear1d", rs);
      write_table(integral_table(rs), common);
    } else if (*scan_bonds) {
      const auto rs = scan_resolution(p.zeta, p.length, p.n_min.value_or(4), p.n_max.value_or(7), p.thresholds,
                                      common.jobs);
      print_scan("scan-bonds", rs);
      write_table(scan_table(rs), common);
    } else if (*scan_zeta_cmd) {
      const auto rs = scan_zeta(p.zetas, p.n, p.length, p.threshold, common.jobs);
      print_scan("scan-zeta", rs);
      write_table(scan_table(rs), common);
    } else if (*orderings) {
      write_table(orderings_table(p.n_min.value_or(2), p.n_max.value_or(5), p), common);
    } else if (*profile) {
      const auto r = bond_profile_report(p.n, p.zeta, p.threshold, p.length);
      std::cout << fmt::format("profile n={} chi_max={} peaks x={} y={} z={}\n", p.n, r.profile.max_dim, r.x_peak,
                               r.y_peak, r.z_peak);
      nlohmann::json j = to_json(r.profile);
      j["x_dims"] = r.x_dims;
      j["y_dims"] = r.y_dims;
      j["z_dims"] = r.z_dims;
      j["peaks"] = {{"x", r.x_peak}, {"y", r.y_peak}, {"z", r.z_peak}};
      ReportTable t{{"cut", "chi"}, {}};
      for (std::size_t i = 0; i < r.profile.dims.size(); ++i)
        t.rows.push_back({static_cast<std::int64_t>(i + 1), std::int64_t{r.profile.dims[i]}});
      if (common.format == "json") {
        if (common.output.empty())
          std::cout << j.dump(2) << "\n";
        else
          emit_report(t, Format::Json, common.output);
      } else {
        write_table(t, common);
      }
    } else if (*two_electron) {
      write_table(two_electron_table(p.n_min.value_or(3), p.n_max.value_or(10), p), common);
    } else if (*fourier) {
      const double frac = fourier_weight(p.n, p.length);
      std::cout << fmt::format("fourier N={} fraction_99={:.4f}\n", 1 << p.n, frac);
      write_table(ReportTable{{"N", "fraction_99"}, {{std::int64_t{1} << p.n, frac}}}, common);
    } else if (*roundtrip) {
      return run_roundtrip(p, common);
    } else if (*tables) {
      return run_tables(p, common);
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
