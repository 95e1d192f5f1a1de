#include "bandpoly/gaussian_spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "bandpoly/quadrature.hpp"

namespace bandpoly {

namespace {
constexpr double kPi = std::numbers::pi;

double lambda_star_of(double w, double u) {
  const double alpha = u * std::sqrt(2.0 + u * u / (w * w));
  return 1.0 - (alpha - u * u / w) / w;
}
}  // namespace

double GaussKernel1D::operator()(double x, double y) const {
  return c * std::exp(-a * (x * x + y * y) - b * (x - y) * (x - y));
}

GaussKernel1D gauss_kernel(double w, double u_star) {
  if (!(w > 0.0) || !(u_star > 0.0))
    throw std::invalid_argument("gauss_kernel: need w > 0 and u_star > 0");
  GaussKernel1D k;
  k.a = 2.0 * u_star * u_star * u_star * u_star / w;
  k.b = 2.0 * w * u_star * u_star;
  k.c = std::sqrt(2.0 * u_star * u_star * w / (kPi * lambda_star_of(w, u_star)));
  return k;
}

MehlerSpectrum mehler_spectrum(const GaussKernel1D& kernel, int m_max) {
  const double a = kernel.a, b = kernel.b;
  const double s = std::sqrt(a * a + 2.0 * a * b);
  MehlerSpectrum out;
  out.q = b / (a + b + s);
  out.lambda0 = kernel.c * std::sqrt(kPi / (a + b + s));
  out.eigs.resize(m_max + 1);
  double e = out.lambda0;
  for (int m = 0; m <= m_max; ++m) {
    out.eigs[m] = e;
    e *= out.q;
  }
  return out;
}

NystromGrid nystrom_grid(double w, double u_star, int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("nystrom_grid: n_nodes < 2");
  NystromGrid g;
  // Ground-state Gaussian has variance 1/(2 alpha u^2); span 8 deviations.
  const double alpha = u_star * std::sqrt(2.0 + u_star * u_star / (w * w));
  g.x_max = 8.0 / std::sqrt(2.0 * alpha * u_star * u_star);
  const GaussLegendre gl = gauss_legendre(n_nodes, -g.x_max, g.x_max);
  g.nodes = gl.nodes;
  g.weights = gl.weights;
  return g;
}

namespace {
std::vector<double> symmetric_nystrom(
    const NystromGrid& grid,
    const std::function<double(double, double)>& kernel, int count) {
  const int n = static_cast<int>(grid.nodes.size());
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    const double si = std::sqrt(grid.weights[i]);
    for (int j = 0; j <= i; ++j) {
      const double v =
          si * std::sqrt(grid.weights[j]) * kernel(grid.nodes[i], grid.nodes[j]);
      b(i, j) = v;
      b(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> eigs(es.eigenvalues().data(),
                           es.eigenvalues().data() + n);
  std::sort(eigs.rbegin(), eigs.rend());
  eigs.resize(std::min<std::size_t>(count, eigs.size()));
  return eigs;
}
}  // namespace

std::vector<double> nystrom_eigs(const GaussKernel1D& kernel,
                                 const NystromGrid& grid, int count) {
  return symmetric_nystrom(
      grid, [&](double x, double y) { return kernel(x, y); }, count);
}

std::vector<double> nystrom_eigs_cubic(const GaussKernel1D& kernel,
                                       const NystromGrid& grid,
                                       double cubic_coef, int count) {
  return symmetric_nystrom(
      grid,
      [&](double x, double y) {
        return std::exp(cubic_coef * (x * x * x + y * y * y)) * kernel(x, y);
      },
      count);
}

std::vector<TensorLevel> tensor4_spectrum(double w, double u_star, int s_max) {
  const MehlerSpectrum m = mehler_spectrum(gauss_kernel(w, u_star), 0);
  std::vector<TensorLevel> out;
  double e = 1.0;
  for (int s = 0; s <= s_max; ++s) {
    TensorLevel lv;
    lv.level = s;
    lv.eigenvalue = e;
    // Compositions of s into 4 ordered parts: C(s+3,3).
    lv.multiplicity = static_cast<long>((s + 1) * (s + 2) * (s + 3) / 6);
    out.push_back(lv);
    e *= m.q;
  }
  return out;
}

}  // namespace bandpoly
