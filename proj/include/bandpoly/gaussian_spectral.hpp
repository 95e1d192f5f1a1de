#pragma once
#include <vector>

namespace bandpoly {

/// One-dimensional Gaussian transfer kernel
/// K(x,y) = c * exp(-a (x^2 + y^2) - b (x - y)^2)
/// with a = 2 u*^4 / W, b = 2 W u*^2 and the normalization
/// c = sqrt(2 u*^2 W / (pi lambda*)) making the top eigenvalue exactly 1.
struct GaussKernel1D {
  double a = 0.0, b = 0.0, c = 0.0;
  double operator()(double x, double y) const;
};

GaussKernel1D gauss_kernel(double w, double u_star);

/// Closed-form spectrum of the Gaussian kernel (Mehler):
/// eigenvalues lambda0 * q^m with s = sqrt(a^2 + 2 a b),
/// q = b / (a + b + s), lambda0 = c sqrt(pi / (a + b + s)).
struct MehlerSpectrum {
  double q = 0.0;
  double lambda0 = 0.0;
  std::vector<double> eigs;  ///< lambda0 * q^m, m = 0..m_max
};
MehlerSpectrum mehler_spectrum(const GaussKernel1D& kernel, int m_max);

/// Symmetrized Nystrom discretization grid: Gauss-Legendre nodes on
/// [-x_max, x_max] with x_max spanning ~8 standard deviations of the
/// kernel's invariant Gaussian.
struct NystromGrid {
  std::vector<double> nodes, weights;
  double x_max = 0.0;
};
NystromGrid nystrom_grid(double w, double u_star, int n_nodes = 400);

/// Leading eigenvalues of the kernel by the symmetric Nystrom method
/// (D^{1/2} K D^{1/2}); descending order.
std::vector<double> nystrom_eigs(const GaussKernel1D& kernel,
                                 const NystromGrid& grid, int count);

/// Same discretization for the cubic-tilted kernel
/// e^{cubic_coef x^3} K(x,y) e^{cubic_coef y^3}, used to bound the effect of
/// O(W^{-3/2}) anharmonic corrections on the top eigenvalue.
std::vector<double> nystrom_eigs_cubic(const GaussKernel1D& kernel,
                                       const NystromGrid& grid,
                                       double cubic_coef, int count);

/// Spectrum of the four-fold tensor power grouped by total level s:
/// eigenvalue q^s with multiplicity C(s+3,3) (lambda0 = 1).
struct TensorLevel {
  int level = 0;
  double eigenvalue = 0.0;
  long multiplicity = 0;
};
std::vector<TensorLevel> tensor4_spectrum(double w, double u_star, int s_max);

}  // namespace bandpoly
