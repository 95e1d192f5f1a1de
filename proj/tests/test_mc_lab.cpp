#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bandpoly/logsum.hpp"
#include "bandpoly/mc_lab.hpp"

using namespace bandpoly;

TEST_CASE("spectral point derived quantities") {
  const SpectralPoint p = make_spectral_point(0.0, {0.3, 0.4}, 100, 10.0);
  CHECK(p.u_star == 1.0);
  CHECK(std::abs(p.lambda_star - 0.8682255) <= 1e-6);
  CHECK(std::abs(p.z1 - std::complex<double>(0.03, 0.04)) <= 1e-15);
  CHECK(std::abs(p.z2 + std::complex<double>(0.03, 0.04)) <= 1e-15);

  const SpectralPoint q = make_spectral_point({0.6, 0.0}, 0.0, 64, 5.0);
  CHECK(std::abs(q.u_star - 0.8) <= 1e-15);
  CHECK(std::abs(q.alpha - 0.8 * std::sqrt(2.0 + 0.64 / 25.0)) <= 1e-15);
}

TEST_CASE("spectral point validation names the offending field") {
  CHECK_THROWS_WITH_AS(make_spectral_point({1.0, 0.0}, 0.0, 4, 1.0),
                       doctest::Contains("|z|"), std::invalid_argument);
  CHECK_THROWS_AS(make_spectral_point(0.0, 0.0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spectral_point(0.0, 0.0, 4, 0.0), std::invalid_argument);
}

TEST_CASE("log-domain mean") {
  const double xs[] = {std::log(1.0), std::log(3.0)};
  CHECK(std::abs(log_mean_exp(xs) - std::log(2.0)) <= 1e-14);
  // Shift invariance at extreme magnitudes.
  const double big[] = {5000.0 + std::log(1.0), 5000.0 + std::log(3.0)};
  CHECK(std::abs(log_mean_exp(big) - 5000.0 - std::log(2.0)) <= 1e-10);
  CHECK_THROWS_AS(log_mean_exp(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("log_abs_det2 matches a direct determinant") {
  Eigen::MatrixXcd m(3, 3);
  m << std::complex<double>(1, 2), std::complex<double>(0, -1), 0.5,
      std::complex<double>(2, 0), std::complex<double>(-1, 1), 0.2,
      std::complex<double>(0, 3), 1.0, std::complex<double>(0.4, -0.7);
  const std::complex<double> shift(0.3, 0.1);
  Eigen::MatrixXcd s = m;
  s.diagonal().array() -= shift;
  const double direct = 2.0 * std::log(std::abs(s.determinant()));
  CHECK(std::abs(log_abs_det2(m, shift) - direct) <= 1e-12);
}

TEST_CASE("coincident probe points give ratio exactly one") {
  const SpectralPoint p = make_spectral_point(0.2, 0.0, 16, 2.0);
  const RatioResult r = estimate_ratios(p, 500, 3);
  CHECK(r.gin.value == 1.0);
  CHECK(r.gin.stderr_ == 0.0);
}

TEST_CASE("gin never exceeds one (Cauchy-Schwarz)") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const SpectralPoint p = make_spectral_point(0.5, 0.8, 16, 2.0);
    const RatioResult r = estimate_ratios(p, 400, seed);
    CHECK(r.gin.value <= 1.0);
    CHECK(r.gin.value > 0.0);
    CHECK(r.loc.value > 0.0);
  }
}

TEST_CASE("serial and parallel samplers agree bitwise") {
  const SpectralPoint p = make_spectral_point(0.3, {0.2, 0.5}, 12, 3.0);
  const BandProfile profile = build_profile(p.n, p.w);
  const LogDetTable serial = sample_log_dets_serial(profile, p, 300, 9);
  for (int workers : {1, 3, 8}) {
    const LogDetTable par = sample_log_dets(profile, p, 300, 9, workers);
    CHECK(par.l0 == serial.l0);
    CHECK(par.l1 == serial.l1);
    CHECK(par.l2 == serial.l2);
  }
  const RatioResult r1 = ratios_from_table(serial, 9);
  const RatioResult r2 = ratios_from_table(serial, 9);
  CHECK(r1.gin.value == r2.gin.value);
  CHECK(r1.gin.stderr_ == r2.gin.stderr_);
}

TEST_CASE("n=1 estimator matches the Gaussian-moment oracle") {
  const std::complex<double> z(0.3, 0.1);
  const std::complex<double> zeta(0.4, -0.2);
  const SpectralPoint p = make_spectral_point(z, zeta, 1, 1.0);
  const RatioResult r = estimate_ratios(p, 200'000, 17);
  const double exact =
      theta_wick_n1(p.z1, p.z2) / theta_wick_n1(p.z, p.z);
  CHECK(std::abs(r.loc.value - exact) <= std::max(4.0 * r.loc.stderr_, 0.02));
}

TEST_CASE("estimate_ratios validates the sample count") {
  const SpectralPoint p = make_spectral_point(0.0, 0.0, 4, 1.0);
  CHECK_THROWS_AS(estimate_ratios(p, 50, 1), std::invalid_argument);
}
