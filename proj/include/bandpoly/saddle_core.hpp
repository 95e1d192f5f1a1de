#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "bandpoly/mc_lab.hpp"

namespace bandpoly {

using QMatrix = Eigen::Matrix2cd;

/// The 4x4 block matrix Qcal = [[zhat, iQ], [iQ^*, zhat^*]] with
/// zhat = diag(z1, z2); its determinant is the basic positive observable of
/// the two-point functional.
Eigen::Matrix4cd q_block(const QMatrix& q, std::complex<double> z1,
                         std::complex<double> z2);

/// det(Qcal) in closed form (real and nonnegative):
/// |z1 z2|^2 + |det Q|^2 + |z2 Q11|^2 + z1 conj(z2) |Q21|^2
/// + conj(z1) z2 |Q12|^2 + |z1 Q22|^2.
std::complex<double> q_block_det(const QMatrix& q, std::complex<double> z1,
                                 std::complex<double> z2);

/// Single-site action f(Q) = (1/2)(-Tr Q Q^* + log det Qcal + 2 u*^2).
std::complex<double> f_action(const QMatrix& q, const SpectralPoint& point);

/// Log of the two-site transfer kernel
/// pi^4 W^4 lambda*^{-2} exp{-W^2 Tr (Q1-Q2)(Q1-Q2)^* + f(Q1) + f(Q2)}.
std::complex<double> log_transfer_kernel(const QMatrix& q1, const QMatrix& q2,
                                         const SpectralPoint& point);
std::complex<double> transfer_kernel(const QMatrix& q1, const QMatrix& q2,
                                     const SpectralPoint& point);

/// Saddle neighborhood: ||Q^* Q - u*^2 I|| <= log(W)/sqrt(W) (spectral norm).
bool in_saddle_region(const QMatrix& q, const SpectralPoint& point);

/// Polar split Q = U R with R = sqrt(Q^* Q) >= 0, plus the polar volume
/// factor pi^3 (Tr R)^2 det R.
struct PolarForm {
  QMatrix u;
  QMatrix r;
  double jacobian = 0.0;
};
PolarForm polar_form(const QMatrix& q);

/// Singular values mu1 >= mu2 >= 0 of Q with the singular-value volume factor
/// 4 pi^4 (mu1^2 - mu2^2)^2 mu1 mu2.
struct SvdForm {
  double mu1 = 0.0, mu2 = 0.0;
  double jacobian = 0.0;
};
SvdForm svd_form(const QMatrix& q);

/// n=1 pair correlator E|x-z1|^2 |x-z2|^2 by three independent routes:
/// Gaussian-moment closed form, direct MC, and singular-value quadrature of
/// the Q-representation (2D Gauss-Legendre, Haar factor reduced to a 16-pair
/// deterministic average, volume constant calibrated at z1=z2=0).
struct ThetaN1 {
  double wick = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  double quadrature = 0.0;
};
ThetaN1 theta_n1_check(std::complex<double> z1, std::complex<double> z2,
                       std::size_t mc_samples, std::uint64_t seed,
                       int quad_nodes = 80);

/// The Haar average of det(Qcal(V1 diag(mu) V2)) as the exact 16-pair
/// average; exposed for testing against a Haar MC average.
double haar_avg_q_block_det(double mu1, double mu2, std::complex<double> z1,
                            std::complex<double> z2);

}  // namespace bandpoly
