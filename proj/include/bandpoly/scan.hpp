#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bandpoly/crossover_model.hpp"
#include "bandpoly/mc_lab.hpp"

namespace bandpoly {

/// One row of a bandwidth scan: MC estimates, effective-model predictions,
/// and the Ginibre limit at a fixed observation point.
struct ScanPoint {
  double w = 0.0;
  RatioResult mc;
  double gin_pred = 0.0, loc_pred = 0.0, gin_limit = 0.0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  /// gin_mc at the largest minus at the smallest w, with a joint bootstrap
  /// standard error (the per-sample noise is coupled across the grid by the
  /// common-random-number keying of the sampler).
  double gap = 0.0;
  double gap_stderr = 0.0;
};

/// Runs the MC estimator over a w-grid with shared noise, attaches model
/// predictions, and jointly bootstraps the crossover gap.
ScanResult crossover_scan(int n, std::complex<double> z,
                          std::complex<double> zeta,
                          const std::vector<double>& w_grid,
                          std::size_t samples, std::uint64_t seed, int m0 = 0,
                          int workers = 0, int bootstrap_resamples = 200);

/// Canonical CSV rendering of a scan (header + one row per w, 17 significant
/// digits); shared by the CLI and the determinism check so the byte-identity
/// guarantee covers the actual output path.
std::string scan_csv(const ScanResult& result);

}  // namespace bandpoly
