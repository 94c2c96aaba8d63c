#include "stomps/entanglement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <numeric>

#include <fftw3.h>
#include <fmt/format.h>

#include "linalg.hpp"
#include "stomps/errors.hpp"
#include "stomps/parallel.hpp"

namespace stomps {

namespace {

constexpr int kScanQubitCeiling = 7;

// FFTW planning is not thread-safe
std::mutex fftw_planner_mutex;

void check_ceiling(int n) {
  if (n < 1) throw DomainError(fmt::format("qubits per coordinate must be positive, got {}", n));
  if (n > kScanQubitCeiling)
    throw ResourceLimitError(fmt::format("bond scans stop at {} qubits per coordinate (2^{} amplitudes); got {}",
                                         kScanQubitCeiling, 3 * kScanQubitCeiling, n));
}

ScanRecord record_for(const SampledState& state, int n, double zeta, double length, double threshold,
                      Ordering ordering) {
  const auto t0 = std::chrono::steady_clock::now();
  const Mps m = decompose(state, threshold);
  ScanRecord r;
  r.n_per_coord = n;
  r.total_qubits = 3 * n;
  r.threshold = threshold;
  r.zeta = zeta;
  r.length = length;
  r.ordering = ordering;
  r.chi_max = m.chi_max();
  if (ordering == Ordering::Grouped) {
    const auto dims = m.bond_dims();
    r.chi_xy = dims[static_cast<std::size_t>(n)];
    r.chi_yz = dims[static_cast<std::size_t>(2 * n)];
  }
  r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

SampledState cart1s_state(int n, double zeta, double length, Ordering ordering) {
  check_ceiling(n);
  OrbitalSpec s;
  s.kind = OrbitalKind::Cart1s;
  s.zeta = zeta;
  return sample(s, Grid3D(Grid1D(n, length, -length / 2), ordering));
}

ScanRecord scan_point(int n, double zeta, double length, double threshold, Ordering ordering) {
  return record_for(cart1s_state(n, zeta, length, ordering), n, zeta, length, threshold, ordering);
}

std::vector<ScanRecord> scan_resolution(double zeta, double length, int n_min, int n_max,
                                        const std::vector<double>& thresholds, int jobs) {
  if (n_min > n_max || thresholds.empty()) throw DomainError("scan needs a non-empty qubit range and threshold list");
  for (int n = n_min; n <= n_max; ++n) check_ceiling(n);
  const std::size_t nt = thresholds.size();
  std::vector<ScanRecord> out(static_cast<std::size_t>(n_max - n_min + 1) * nt);
  parallel_for(static_cast<std::size_t>(n_max - n_min + 1), jobs, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i);
    const SampledState st = cart1s_state(n, zeta, length, Ordering::Grouped);
    for (std::size_t t = 0; t < nt; ++t)
      out[i * nt + t] = record_for(st, n, zeta, length, thresholds[t], Ordering::Grouped);
  });
  for (std::size_t i = nt; i < out.size(); ++i) out[i].delta_chi_max = out[i].chi_max - out[i - nt].chi_max;
  return out;
}

std::vector<ScanRecord> scan_zeta(const std::vector<double>& zetas, int n, double length, double threshold,
                                  int jobs) {
  if (zetas.empty()) throw DomainError("zeta scan needs at least one value");
  check_ceiling(n);
  std::vector<ScanRecord> out(zetas.size());
  parallel_for(zetas.size(), jobs, [&](std::size_t i) { out[i] = scan_point(n, zetas[i], length, threshold); });
  return out;
}

std::pair<ScanRecord, ScanRecord> compare_orderings(int n, double zeta, double length, double threshold) {
  return {scan_point(n, zeta, length, threshold, Ordering::Grouped),
          scan_point(n, zeta, length, threshold, Ordering::Interleaved)};
}

ProfileReport bond_profile_report(int n, double zeta, double threshold, double length) {
  const SampledState st = cart1s_state(n, zeta, length, Ordering::Grouped);
  const Mps m = decompose(st, threshold);
  ProfileReport r;
  r.profile = bond_profile(m, std::get<Grid3D>(st.grid));
  const auto& d = r.profile.dims;  // d[i-1] is the cut after i qubits
  const auto n_ = static_cast<std::size_t>(n);
  r.x_dims.assign(d.begin(), d.begin() + static_cast<long>(n_ - 1));
  r.y_dims.assign(d.begin() + static_cast<long>(n_), d.begin() + static_cast<long>(2 * n_ - 1));
  r.z_dims.assign(d.begin() + static_cast<long>(2 * n_), d.end());
  auto peak = [](const std::vector<int>& v) { return v.empty() ? 1 : *std::max_element(v.begin(), v.end()); };
  r.x_peak = peak(r.x_dims);
  r.y_peak = peak(r.y_dims);
  r.z_peak = peak(r.z_dims);
  return r;
}

TwoElectronRank two_electron_rank(int n, std::pair<double, double> zetas, double separation, double length,
                                  Kernel kernel) {
  if (n < 1 || n > 10) throw ResourceLimitError(fmt::format("two-electron rank needs 2 <= N <= 1024, got 2^{}", n));
  const Grid1D grid(n, length);
  const Eigen::Index size = static_cast<Eigen::Index>(grid.size());
  const double dx = grid.spacing();
  const double ra = length / 2 - separation / 2;
  const double rb = length / 2 + separation / 2;
  Eigen::MatrixXd m(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const double x = grid.point(static_cast<std::uint64_t>(j));
    const double f1 = kernel == Kernel::Bare ? 1.0 : std::exp(-zetas.first * std::abs(x - ra));
    for (Eigen::Index k = 0; k < size; ++k) {
      // the second electron's grid is offset by half a spacing, so x != y
      const double y = grid.point(static_cast<std::uint64_t>(k)) + dx / 2;
      const double f2 = kernel == Kernel::Bare ? 1.0 : std::exp(-zetas.second * std::abs(y - rb));
      const double kv = kernel == Kernel::Unit ? 1.0 : 1.0 / std::abs(x - y);
      m(j, k) = f1 * kv * f2;
    }
  }
  const Eigen::VectorXd s = detail::singular_values(m);
  TwoElectronRank r;
  r.n_points = static_cast<int>(size);
  r.rank = static_cast<int>((s.array() >= 1e-12 * s[0]).count());
  r.ratio = static_cast<double>(r.rank) / static_cast<double>(size);
  return r;
}

double spectral_mode_fraction(const Eigen::VectorXd& signal, double weight) {
  const int size = static_cast<int>(signal.size());
  if (size == 0) throw DomainError("empty signal");
  if (!(weight > 0.0 && weight <= 1.0)) throw DomainError("weight fraction must lie in (0, 1]");
  auto* in = fftw_alloc_complex(static_cast<std::size_t>(size));
  auto* out = fftw_alloc_complex(static_cast<std::size_t>(size));
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(fftw_planner_mutex);
    plan = fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (int j = 0; j < size; ++j) {
    in[j][0] = signal[j];
    in[j][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<double> power(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) power[static_cast<std::size_t>(j)] = out[j][0] * out[j][0] + out[j][1] * out[j][1];
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);

  std::sort(power.begin(), power.end(), std::greater<>());
  const double total = std::accumulate(power.begin(), power.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("signal has no spectral weight");
  double acc = 0.0;
  std::size_t modes = 0;
  // a relative slack keeps exactly-representable targets (e.g. 1.0) reachable
  while (modes < power.size() && acc < weight * total * (1.0 - 1e-12)) acc += power[modes++];
  return static_cast<double>(modes) / static_cast<double>(size);
}

double fourier_weight(int n, double length, double weight) {
  if (n < 1 || n > 12) throw ResourceLimitError(fmt::format("Fourier analysis needs N <= 4096, got 2^{}", n));
  const Grid1D grid(n, length);
  Eigen::VectorXd f(static_cast<Eigen::Index>(grid.size()));
  for (std::uint64_t j = 0; j < grid.size(); ++j)
    f[static_cast<Eigen::Index>(j)] = 1.0 / (grid.point(j) + grid.spacing() / 2);
  return spectral_mode_fraction(f, weight);
}

}  // namespace stomps
