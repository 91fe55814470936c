// Benchmark of the OpenMP kernels against their serial references:
// the per-bin correlation scan and the trial-parallel sweep loop.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "qcomp/dictionary.hpp"
#include "qcomp/harness.hpp"
#include "qcomp/kernels.hpp"
#include "qcomp/rng.hpp"
#include "qcomp/signal.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_scan(int m, int n_bins, int reps) {
  const qcomp::RadarConfig cfg = qcomp::RadarConfig::normalized(m);
  const qcomp::InterpolatedDictionary dict(cfg, n_bins,
                                           qcomp::InterpolationScheme::none);
  const auto atoms = dict.scan_view();

  qcomp::RngStream rng(7);
  std::vector<double> sig_re(static_cast<std::size_t>(m));
  std::vector<double> sig_im(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    sig_re[static_cast<std::size_t>(j)] = rng.uniform(-1.0, 1.0);
    sig_im[static_cast<std::size_t>(j)] = rng.uniform(-1.0, 1.0);
  }
  std::vector<double> out_serial(static_cast<std::size_t>(n_bins));
  std::vector<double> out_parallel(static_cast<std::size_t>(n_bins));

  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    qcomp::kernels::correlation_mag2_serial(atoms, sig_re.data(),
                                            sig_im.data(), out_serial.data());
  }
  const double serial_s = seconds_since(t0);

  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    qcomp::kernels::correlation_mag2_parallel(
        atoms, sig_re.data(), sig_im.data(), out_parallel.data());
  }
  const double parallel_s = seconds_since(t0);

  bool identical = true;
  for (int n = 0; n < n_bins; ++n) {
    if (out_serial[static_cast<std::size_t>(n)] !=
        out_parallel[static_cast<std::size_t>(n)]) {
      identical = false;
      break;
    }
  }

  const double flops =
      8.0 * static_cast<double>(m) * n_bins * reps;  // 4 mul + 4 add per sample
  std::printf(
      "scan  M=%4d N=%5d  serial %8.3f ms (%5.2f GF/s)  omp %8.3f ms "
      "(%5.2f GF/s)  speedup %4.2fx  bitwise %s\n",
      m, n_bins, 1e3 * serial_s / reps, flops / serial_s * 1e-9,
      1e3 * parallel_s / reps, flops / parallel_s * 1e-9, serial_s / parallel_s,
      identical ? "equal" : "DIFFER");
}

void bench_sweep(long trials) {
  qcomp::ExperimentConfig cfg;
  cfg.k_targets = 2;
  cfg.trials = trials;
  cfg.schemes = {qcomp::InterpolationScheme::taylor1};
  cfg.channels = {qcomp::ChannelKind::onebit_dither};
  cfg.densities = {5.0};
  cfg.master_seed = 42;

  qcomp::SweepOptions options;
  options.now_ms = [] { return 0.0; };

  cfg.workers = 1;
  auto t0 = Clock::now();
  const auto rows1 = qcomp::run_sweep(cfg, options);
  const double serial_s = seconds_since(t0);

  cfg.workers = omp_get_max_threads();
  t0 = Clock::now();
  const auto rowsN = qcomp::run_sweep(cfg, options);
  const double parallel_s = seconds_since(t0);

  const bool identical = qcomp::to_csv(rows1) == qcomp::to_csv(rowsN);
  std::printf(
      "sweep K=2 rho=5 trials=%ld  1 worker %7.1f ms  %d workers %7.1f ms  "
      "speedup %4.2fx  output %s\n",
      trials, 1e3 * serial_s, omp_get_max_threads(), 1e3 * parallel_s,
      serial_s / parallel_s, identical ? "identical" : "DIFFERS");
}

}  // namespace

int main() {
  std::printf("hardware threads: %d\n\n", omp_get_max_threads());
  bench_scan(256, 256, 2000);
  bench_scan(256, 640, 1000);
  bench_scan(256, 1280, 500);
  bench_scan(1024, 5120, 50);
  std::printf("\n");
  bench_sweep(500);
  return 0;
}
