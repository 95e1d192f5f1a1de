#include "bandpoly/band_model.hpp"

#include <stdexcept>
#include <vector>

#include "bandpoly/rng.hpp"

namespace bandpoly {

Eigen::MatrixXd neumann_stencil(int n) {
  if (n < 1) throw std::invalid_argument("neumann_stencil: n must be >= 1");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = (i == 0 || i == n - 1) ? 1.0 : 2.0;
    if (i + 1 < n) {
      l(i, i + 1) = -1.0;
      l(i + 1, i) = -1.0;
    }
  }
  if (n == 1) l(0, 0) = 0.0;
  return l;
}

BandProfile build_profile(int n, double w) {
  if (n < 1) throw std::invalid_argument("build_profile: n must be >= 1");
  if (!(w > 0.0)) throw std::invalid_argument("build_profile: w must be > 0");

  BandProfile p;
  p.n = n;
  p.w = w;
  p.j.resize(n, n);

  // Tridiagonal system A = I + w^2 L, solved per unit column by the Thomas
  // algorithm.  The forward elimination depends only on A, so it is done once.
  const double w2 = w * w;
  std::vector<double> diag(n), upper(n, -w2), cprime(n);
  for (int i = 0; i < n; ++i)
    diag[i] = 1.0 + w2 * ((i == 0 || i == n - 1) ? 1.0 : 2.0);
  if (n == 1) diag[0] = 1.0;

  std::vector<double> denom(n);
  denom[0] = diag[0];
  if (n > 1) {
    cprime[0] = upper[0] / denom[0];
    for (int i = 1; i < n; ++i) {
      denom[i] = diag[i] - (-w2) * cprime[i - 1];
      if (i + 1 < n) cprime[i] = upper[i] / denom[i];
    }
  }

  std::vector<double> x(n);
  for (int col = 0; col < n; ++col) {
    // Forward substitution of e_col, then back substitution.
    x[0] = (col == 0 ? 1.0 : 0.0) / denom[0];
    for (int i = 1; i < n; ++i)
      x[i] = ((i == col ? 1.0 : 0.0) + w2 * x[i - 1]) / denom[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= cprime[i] * x[i + 1];
    for (int i = 0; i < n; ++i) p.j(i, col) = x[i];
  }

  p.amp = (p.j.array() / 2.0).sqrt();
  return p;
}

Eigen::MatrixXcd sample_matrix(const BandProfile& profile, std::uint64_t seed,
                               std::uint64_t sample_index) {
  const int n = profile.n;
  Eigen::MatrixXcd h(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const CounterRng rng(seed, static_cast<std::uint64_t>(j),
                           static_cast<std::uint64_t>(k));
      h(j, k) = profile.amp(j, k) * rng.complex_gaussian(sample_index);
    }
  }
  return h;
}

}  // namespace bandpoly
