// Benchmark: serial reference sampler vs the OpenMP sampler on the
// desk-scale MC workload, plus a bitwise agreement check.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "bandpoly/band_model.hpp"
#include "bandpoly/mc_lab.hpp"
#include "bandpoly/rng.hpp"

using namespace bandpoly;

namespace {
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 64;
  const std::size_t samples = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;
  const double w = 8.0;
  const SpectralPoint point = make_spectral_point(0.5, 0.8, n, w);
  const BandProfile profile = build_profile(n, w);
  const int workers = resolve_workers(0);

  std::printf("n=%d samples=%zu w=%g workers=%d\n", n, samples, w, workers);

  auto t0 = std::chrono::steady_clock::now();
  const LogDetTable serial = sample_log_dets_serial(profile, point, samples, 1);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const LogDetTable parallel = sample_log_dets(profile, point, samples, 1, workers);
  const double t_parallel = seconds_since(t0);

  const bool identical = serial.l0 == parallel.l0 && serial.l1 == parallel.l1 &&
                         serial.l2 == parallel.l2;

  std::printf("serial   : %8.3f s  (%.1f samples/s)\n", t_serial,
              samples / t_serial);
  std::printf("parallel : %8.3f s  (%.1f samples/s)  speedup %.2fx\n",
              t_parallel, samples / t_parallel, t_serial / t_parallel);
  std::printf("bitwise agreement: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
