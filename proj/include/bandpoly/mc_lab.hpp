#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandpoly/band_model.hpp"

namespace bandpoly {

/// A sampled matrix landed (to machine precision) on a spectral observation
/// point; the sample is discarded and counted, never silently patched.
struct SingularSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Observation geometry: a base point z inside the unit disk and a microscopic
/// separation zeta, giving the probe pair z1 = z + zeta/sqrt(n),
/// z2 = z - zeta/sqrt(n), plus the derived bulk quantities u*, alpha, lambda*.
struct SpectralPoint {
  int n = 0;
  double w = 0.0;
  std::complex<double> z;
  std::complex<double> zeta;
  std::complex<double> z1, z2;
  double u_star = 0.0;      ///< sqrt(1 - |z|^2)
  double alpha = 0.0;       ///< u* sqrt(2 + u*^2/w^2)
  double lambda_star = 0.0; ///< 1 - (alpha - u*^2/w)/w
};

/// Validates and derives a SpectralPoint.  Throws std::invalid_argument with a
/// field-named message for |z| >= 1, n < 1, or w <= 0.
SpectralPoint make_spectral_point(std::complex<double> z,
                                  std::complex<double> zeta, int n, double w);

/// log|det(m - shift)|^2 via partially pivoted LU.  Throws SingularSample when
/// a pivot vanishes exactly.
double log_abs_det2(const Eigen::MatrixXcd& m, std::complex<double> shift);

/// Per-sample log-observables: l0 = log|det(H-z)|^2, l1/l2 the same at z1/z2.
/// All three come from the same draw of H (shared-sample estimators).
struct LogDetTable {
  std::vector<double> l0, l1, l2;
  std::size_t singular_count = 0;
};

/// Parallel (OpenMP) sampler: sample i fills slot i of each column, so the
/// table is bit-identical for any worker count.  workers <= 0 defers to
/// BANDPOLY_WORKERS / hardware.
LogDetTable sample_log_dets(const BandProfile& profile,
                            const SpectralPoint& point, std::size_t samples,
                            std::uint64_t seed, int workers = 0);

/// Serial reference implementation of the same sampler (kept for testing and
/// benchmarking; must agree bitwise with sample_log_dets).
LogDetTable sample_log_dets_serial(const BandProfile& profile,
                                   const SpectralPoint& point,
                                   std::size_t samples, std::uint64_t seed);

struct RatioEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// The two characteristic-polynomial correlation ratios and their bootstrap
/// standard errors.
struct RatioResult {
  RatioEstimate gin;  ///< E[D1 D2] / sqrt(E[D1^2] E[D2^2]),  D_i = |det(H-z_i)|^2
  RatioEstimate loc;  ///< E[D1 D2] / E[D0^2]
  std::size_t samples = 0;
  std::size_t singular_count = 0;
};

/// Log-domain ratio estimators over a shared sample table, with percentile
/// bootstrap (index-resampled in a deterministic counter stream keyed by
/// seed).  Reductions run in fixed index order: results are independent of
/// worker count.
RatioResult ratios_from_table(const LogDetTable& table, std::uint64_t seed,
                              int bootstrap_resamples = 200);

/// End-to-end estimator: builds the profile, samples, reduces.
RatioResult estimate_ratios(const SpectralPoint& point, std::size_t samples,
                            std::uint64_t seed, int workers = 0,
                            int bootstrap_resamples = 200);

/// Exact Gaussian-moment value of the n=1 pair correlator
/// E|x-z1|^2|x-z2|^2 for x a standard complex Gaussian (Wick oracle).
double theta_wick_n1(std::complex<double> z1, std::complex<double> z2);

}  // namespace bandpoly
