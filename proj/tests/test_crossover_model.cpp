#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bandpoly/crossover_model.hpp"
#include "bandpoly/quadrature.hpp"
#include "bandpoly/rng.hpp"
#include "bandpoly/unitary_harmonics.hpp"

using namespace bandpoly;

TEST_CASE("coupling matrix closed form") {
  const double za = 0.7;
  const Eigen::MatrixXd nu = nu_matrix(za, 4);
  CHECK(nu.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(nu(0, 1) - za * za / std::sqrt(3.0)) <= 1e-15);
  CHECK(std::abs(nu(1, 2) - za * za * 2.0 / std::sqrt(15.0)) <= 1e-15);
  CHECK((nu - nu.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(nu_matrix(0.0, 3).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(nu_matrix(0.5, 0), std::invalid_argument);
}

TEST_CASE("coupling matrix matches direct quadrature of cos(theta)") {
  // nu_{ll'} = |zeta|^2 * integral of cos(theta) e_l e_l' over the sphere
  // measure (1/2) sin(theta) dtheta, with e_l = sqrt(2l+1) P_l(cos theta).
  const double za = 0.9;
  const int m0 = 6;
  const Eigen::MatrixXd nu = nu_matrix(za, m0);
  const GaussLegendre gl = gauss_legendre(200, 0.0, std::numbers::pi);
  for (int l = 0; l <= m0; ++l) {
    for (int lp = 0; lp <= m0; ++lp) {
      double acc = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double th = gl.nodes[i];
        acc += gl.weights[i] * 0.5 * std::sin(th) * std::cos(th) *
               wigner_p(l, 0, 0, th).real() * wigner_p(lp, 0, 0, th).real();
      }
      acc *= za * za * std::sqrt((2.0 * l + 1) * (2.0 * lp + 1));
      CHECK(std::abs(acc - nu(l, lp)) <= 1e-9);
    }
  }
}

TEST_CASE("effective matrix structure and contraction clamp") {
  const SpectralPoint p = make_spectral_point(0.5, 0.8, 64, 3.0);
  const EffectiveMatrix m = d_matrix(64, 3.0, p, 0);
  CHECK(m.d(0, 0) == 0.0);
  CHECK((m.d - m.d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int l = 0; l <= m.m0; ++l)
    CHECK(std::abs(1.0 + m.d(l, l)) <= 1.0 + 1e-12);
  // Large W at fixed N: damping vanishes, only the coupling remains.
  const SpectralPoint phi = make_spectral_point(0.5, 0.8, 64, 1e6);
  const EffectiveMatrix big = d_matrix(64, 1e6, phi, 8);
  const Eigen::MatrixXd target = (2.0 / 64.0) * nu_matrix(0.8, 8);
  // Residual is the vanishing damping diagonal, O(1/W^2).
  CHECK((big.d - target).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("matrix power: trivial and oracle cases") {
  EffectiveMatrix zero;
  zero.m0 = 3;
  zero.d = Eigen::MatrixXd::Zero(4, 4);
  CHECK(std::abs(matrix_power_00(zero, 1000) - 1.0) <= 1e-12);

  EffectiveMatrix diag = zero;
  diag.d(0, 0) = -0.25;
  CHECK(std::abs(matrix_power_00(diag, 10) - std::pow(0.75, 10)) <= 1e-14);

  // Small random tridiagonal vs dense brute force.
  EffectiveMatrix tri = zero;
  const CounterRng rng(4, 0x747269ULL);
  for (int l = 0; l < 3; ++l) {
    const double v = 0.1 * (rng.uniform(l) - 0.5);
    tri.d(l, l + 1) = tri.d(l + 1, l) = v;
    tri.d(l, l) = -0.05 * rng.uniform(10 + l);
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::MatrixXd one_plus = Eigen::MatrixXd::Identity(4, 4) + tri.d;
  for (int i = 0; i < 57; ++i) acc = acc * one_plus;
  CHECK(std::abs(matrix_power_00(tri, 57) - acc(0, 0)) <= 1e-12);
}

TEST_CASE("predictions: zeta = 0 and frozen desk-scale values") {
  const SpectralPoint p0 = make_spectral_point(0.5, 0.0, 64, 8.0);
  const Prediction base = predict_ratios(64, 8.0, p0);
  CHECK(base.gin_pred == 1.0);
  CHECK(base.loc_pred == 1.0);

  const double loc_expect[] = {1.052653, 1.148532, 1.238737, 1.275562,
                               1.286158};
  const double gin_expect[] = {0.292677, 0.319335, 0.344415, 0.354654,
                               0.357600};
  const double ws[] = {3, 6, 12, 24, 48};
  for (int i = 0; i < 5; ++i) {
    const SpectralPoint p = make_spectral_point(0.5, 0.8, 64, ws[i]);
    const Prediction pr = predict_ratios(64, ws[i], p);
    CHECK(std::abs(pr.loc_pred - loc_expect[i]) <= 2e-6);
    CHECK(std::abs(pr.gin_pred - gin_expect[i]) <= 2e-6);
  }
}

TEST_CASE("limit laws") {
  CHECK(std::abs(ginibre_limit(0.5) - 0.6321206) <= 1e-7);
  CHECK(std::abs(ginibre_limit(1.0) - 0.2454211) <= 1e-7);
  CHECK(std::abs(ginibre_limit(1e-9) - 1.0) <= 1e-12);
  // Series branch agrees with the closed form at the switch point.
  const double za_small = 0.0099999;  // |zeta|^2 just below the threshold
  const double x = 4.0 * za_small * za_small;
  CHECK(std::abs(ginibre_limit(za_small) - (1.0 - std::exp(-x)) / x) <= 1e-12);

  // exp(-2|z|^2) sinh(2|z|^2)/(2|z|^2) is the same function.
  for (double za : {0.3, 0.8, 1.3}) {
    const double z2 = za * za;
    const double alt = std::exp(-2 * z2) * std::sinh(2 * z2) / (2 * z2);
    CHECK(std::abs(ginibre_limit(za) - alt) <= 1e-12);
  }
}

TEST_CASE("pair-kernel ratio") {
  const CounterRng rng(11, 0x6b32ULL);
  for (int t = 0; t < 20; ++t) {
    const std::complex<double> zeta =
        std::polar(0.1 + 1.5 * rng.uniform(2 * t),
                   6.283185307179586 * rng.uniform(2 * t + 1));
    CHECK(std::abs(det2_kernel_ratio(zeta, -zeta) - ginibre_limit(zeta)) <=
          1e-12);
  }
  // Global phase invariance.
  const std::complex<double> a(0.4, 0.7), b(-0.2, 0.1);
  const std::complex<double> rot = std::polar(1.0, 1.234);
  CHECK(std::abs(det2_kernel_ratio(a, b) - det2_kernel_ratio(rot * a, rot * b)) <=
        1e-13);
  CHECK_THROWS_AS(det2_kernel_ratio(a, a), std::invalid_argument);
  CHECK(std::abs(det2_kernel_ratio(a, a + 1e-7) - 1.0) <= 1e-7);
}

TEST_CASE("monotone crossover in W") {
  const long n = 100'000;
  double prev = 0.0;
  for (int i = 0; i < 20; ++i) {
    // W^2/N from 1e-3 to 1e3, geometric.
    const double w2_over_n = 1e-3 * std::pow(1e6, i / 19.0);
    const double w = std::sqrt(w2_over_n * n);
    const SpectralPoint p = make_spectral_point(0.0, 0.8, n, w);
    const double gin = predict_ratios(n, w, p).gin_pred;
    if (i > 0) CHECK(gin >= prev - 1e-12);
    prev = gin;
  }
  CHECK(std::abs(prev - ginibre_limit(0.8)) <= 2e-3);
}
