#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bandpoly/band_model.hpp"

using namespace bandpoly;

TEST_CASE("neumann stencil shape") {
  const Eigen::MatrixXd l = neumann_stencil(4);
  CHECK(l(0, 0) == 1.0);
  CHECK(l(1, 1) == 2.0);
  CHECK(l(2, 2) == 2.0);
  CHECK(l(3, 3) == 1.0);
  CHECK(l(0, 1) == -1.0);
  CHECK(l(1, 0) == -1.0);
  CHECK(l(0, 2) == 0.0);
  CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-site profile closed form") {
  const BandProfile p = build_profile(2, 1.0);
  CHECK(std::abs(p.j(0, 0) - 2.0 / 3.0) <= 1e-14);
  CHECK(std::abs(p.j(0, 1) - 1.0 / 3.0) <= 1e-14);
  CHECK(std::abs(p.j(1, 0) - 1.0 / 3.0) <= 1e-14);
  CHECK(std::abs(p.j(1, 1) - 2.0 / 3.0) <= 1e-14);
}

TEST_CASE("rows sum to one and profile is symmetric") {
  for (int n : {1, 7, 64}) {
    for (double w : {0.5, 2.0, 16.0}) {
      const BandProfile p = build_profile(n, w);
      CHECK((p.j.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
      CHECK((p.j - p.j.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
      CHECK(p.j.minCoeff() > 0.0);
    }
  }
}

TEST_CASE("profile solves the defining linear system") {
  const int n = 32;
  const double w = 3.0;
  const BandProfile p = build_profile(n, w);
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(n, n) + w * w * neumann_stencil(n);
  CHECK((a * p.j - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("off-band decay rate is 1/w") {
  const int n = 64;
  const double w = 4.0;
  const BandProfile p = build_profile(n, w);
  // Away from the boundary, consecutive-entry ratios approach exp(-1/w).
  const double ratio = p.j(32, 44) / p.j(32, 43);
  CHECK(std::abs(std::log(ratio) + 1.0 / w) <= 0.02 / w);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(build_profile(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_profile(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_profile(4, -1.0), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and has the right variance") {
  const BandProfile p = build_profile(8, 2.0);
  const Eigen::MatrixXcd h1 = sample_matrix(p, 42, 7);
  const Eigen::MatrixXcd h2 = sample_matrix(p, 42, 7);
  CHECK((h1 - h2).norm() == 0.0);
  CHECK((sample_matrix(p, 42, 8) - h1).norm() > 0.0);
  CHECK((sample_matrix(p, 43, 7) - h1).norm() > 0.0);

  const int trials = 20000;
  double acc = 0.0;
  for (int i = 0; i < trials; ++i)
    acc += std::norm(sample_matrix(p, 1, i)(3, 5));
  CHECK(std::abs(acc / trials / p.j(3, 5) - 1.0) <= 0.05);
}

TEST_CASE("noise is coupled across bandwidths (common random numbers)") {
  const BandProfile pa = build_profile(8, 2.0);
  const BandProfile pb = build_profile(8, 6.0);
  const Eigen::MatrixXcd ha = sample_matrix(pa, 5, 11);
  const Eigen::MatrixXcd hb = sample_matrix(pb, 5, 11);
  // Same underlying Gaussian draw, rescaled entrywise.
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k)
      CHECK(std::abs(ha(j, k) / pa.amp(j, k) - hb(j, k) / pb.amp(j, k)) <=
            1e-13);
}
