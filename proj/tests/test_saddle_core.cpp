#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bandpoly/rng.hpp"
#include "bandpoly/saddle_core.hpp"
#include "bandpoly/unitary_harmonics.hpp"

using namespace bandpoly;

namespace {
QMatrix random_q(std::uint64_t seed) {
  const CounterRng rng(seed, 0x71ULL);
  QMatrix q;
  q(0, 0) = rng.complex_gaussian(0);
  q(0, 1) = rng.complex_gaussian(1);
  q(1, 0) = rng.complex_gaussian(2);
  q(1, 1) = rng.complex_gaussian(3);
  return q;
}
}  // namespace

TEST_CASE("closed-form block determinant matches the 4x4 determinant") {
  for (std::uint64_t s : {1, 2, 3, 4, 5}) {
    const QMatrix q = random_q(s);
    const std::complex<double> z1(0.3, -0.2), z2(-0.1, 0.5);
    const std::complex<double> direct = q_block(q, z1, z2).determinant();
    CHECK(std::abs(q_block_det(q, z1, z2) - direct) <=
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("action at a diagonal point, z1 = z2 = 0") {
  const SpectralPoint p = make_spectral_point(0.0, 0.0, 4, 5.0);
  const double m1 = 1.3, m2 = 0.4;
  const QMatrix q = Eigen::Vector2cd(m1, m2).asDiagonal();
  const double expect = 0.5 * (-m1 * m1 - m2 * m2 +
                               2.0 * std::log(m1 * m2) + 2.0);
  CHECK(std::abs(f_action(q, p) - expect) <= 1e-13);
}

TEST_CASE("action is maximal on the saddle manifold") {
  const SpectralPoint p = make_spectral_point(0.0, 0.0, 4, 5.0);
  const double u = p.u_star;
  const QMatrix saddle = u * haar_sample(3, 0);
  const double f_saddle = f_action(saddle, p).real();
  CHECK(std::abs(f_saddle) <= 1e-12);  // f = 0 on the manifold at zeta = 0
  for (std::uint64_t s : {10, 11, 12}) {
    const QMatrix q = saddle + 0.3 * random_q(s);
    CHECK(f_action(q, p).real() < f_saddle + 1e-9);
  }
}

TEST_CASE("transfer kernel constant and symmetry") {
  const SpectralPoint p = make_spectral_point(0.0, 0.0, 4, 5.0);
  const QMatrix q1 = p.u_star * haar_sample(1, 0);
  const QMatrix q2 = p.u_star * haar_sample(1, 1);
  CHECK(std::abs(log_transfer_kernel(q1, q2, p) -
                 log_transfer_kernel(q2, q1, p)) <= 1e-10);
  // Coincident arguments on the manifold: log(pi^4 W^4 / lambda*^2).
  const double expect =
      std::log(std::pow(std::numbers::pi * p.w, 4.0)) -
      2.0 * std::log(p.lambda_star);
  CHECK(std::abs(log_transfer_kernel(q1, q1, p).real() - expect) <= 1e-10);
}

TEST_CASE("polar form reconstructs Q with Hermitian PSD factor") {
  for (std::uint64_t s : {2, 7}) {
    const QMatrix q = random_q(s);
    const PolarForm pf = polar_form(q);
    CHECK((pf.u * pf.r - q).norm() <= 1e-12);
    CHECK((pf.u.adjoint() * pf.u - QMatrix::Identity()).norm() <= 1e-12);
    CHECK((pf.r - pf.r.adjoint()).norm() <= 1e-12);
    const double tr = pf.r.trace().real();
    const double expect = std::pow(std::numbers::pi, 3.0) * tr * tr *
                          pf.r.determinant().real();
    CHECK(std::abs(pf.jacobian - expect) <= 1e-10 * std::abs(expect));
  }
}

TEST_CASE("singular-value form and volume factor") {
  QMatrix q;
  q << 3.0, 0.0, 0.0, 1.0;
  const SvdForm f = svd_form(q);
  CHECK(f.mu1 == 3.0);
  CHECK(f.mu2 == 1.0);
  const double expect = 4.0 * std::pow(std::numbers::pi, 4.0) * 64.0 * 3.0;
  CHECK(std::abs(f.jacobian - expect) <= 1e-10 * expect);
}

TEST_CASE("saddle region membership") {
  const SpectralPoint p = make_spectral_point(0.0, 0.0, 4, 50.0);
  CHECK(in_saddle_region(p.u_star * QMatrix::Identity(), p));
  CHECK(!in_saddle_region(2.0 * p.u_star * QMatrix::Identity(), p));
}

TEST_CASE("16-pair average equals the Haar average") {
  const std::complex<double> z1(0.4, 0.1), z2(-0.3, 0.2);
  const double m1 = 1.2, m2 = 0.7;
  const double exact = haar_avg_q_block_det(m1, m2, z1, z2);
  const QMatrix lam = Eigen::Vector2cd(m1, m2).asDiagonal();
  const int n = 200'000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const QMatrix q = haar_sample(8, 2 * i) * lam * haar_sample(8, 2 * i + 1);
    acc += q_block_det(q, z1, z2).real();
  }
  CHECK(std::abs(acc / n / exact - 1.0) <= 0.01);
}

TEST_CASE("three routes to the n=1 correlator agree") {
  const std::complex<double> z1(0.5, -0.2), z2(-0.1, 0.3);
  const ThetaN1 t = theta_n1_check(z1, z2, 200'000, 21);
  CHECK(std::abs(t.quadrature / t.wick - 1.0) <= 1e-9);
  CHECK(std::abs(t.mc - t.wick) <= 4.0 * t.mc_stderr);
}
