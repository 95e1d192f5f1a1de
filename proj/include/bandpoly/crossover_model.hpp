#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "bandpoly/mc_lab.hpp"

namespace bandpoly {

/// Tridiagonal coupling matrix on levels 0..m0: zero diagonal,
/// nu_{l,l+1} = nu_{l+1,l} = |zeta|^2 (l+1) / sqrt((2l+1)(2l+3)).
Eigen::MatrixXd nu_matrix(double zeta_abs, int m0);

/// One-step effective transfer matrix I + D on the level ladder:
/// D_ll = -l(l+1)/(2 (u* W)^2), D_{l,l+-1} = (2/N) nu_{l,l+-1}.
/// The truncation is clamped so that |1 + D_ll| <= 1 on every retained level
/// (l(l+1) <= 4 (u* W)^2); predictions are insensitive to the clamp.
struct EffectiveMatrix {
  int m0 = 0;           ///< retained top level (after clamping)
  Eigen::MatrixXd d;    ///< the increment D (symmetric tridiagonal)
};
EffectiveMatrix d_matrix(long n, double w, const SpectralPoint& point,
                         int m0 = 0);  ///< m0 <= 0 selects automatically

/// ((I + D)^n)_{00} via symmetric eigendecomposition with log-domain
/// powering, cross-checked against binary matrix powering.
double matrix_power_00(const EffectiveMatrix& m, long n);

/// Crossover-model predictions for the two MC ratios.
struct Prediction {
  double gin_pred = 0.0;  ///< e^{-2|zeta|^2} * p
  double loc_pred = 0.0;  ///< p = ((I + D)^n)_{00}
  int m0_used = 0;
};
Prediction predict_ratios(long n, double w, const SpectralPoint& point,
                          int m0 = 0);

/// Fully delocalized (Ginibre) limit (1 - e^{-4|zeta|^2}) / (4 |zeta|^2)
/// of the gin ratio; series form below |zeta|^2 = 1e-4.
double ginibre_limit(std::complex<double> zeta);

/// Microscopic determinantal-kernel ratio
/// (1 - e^{-|z1 - z2|^2}) / |z1 - z2|^2 (confluent series near coincidence).
double det2_kernel_ratio(std::complex<double> z1, std::complex<double> z2);

}  // namespace bandpoly
