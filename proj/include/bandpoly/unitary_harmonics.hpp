#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>

namespace bandpoly {

/// Euler parametrization of U(2):
/// U = [[cos(t/2) e^{i(sigma+gamma)},  i sin(t/2) e^{i(delta+gamma)}],
///      [i sin(t/2) e^{i(-delta+gamma)}, cos(t/2) e^{i(-sigma+gamma)}]]
/// with theta in [0,pi], sigma,delta in [-pi,pi], gamma in [-pi/2,pi/2]
/// (det U = e^{2 i gamma}).
struct EulerAngles {
  double theta = 0.0, sigma = 0.0, delta = 0.0, gamma = 0.0;
};

Eigen::Matrix2cd euler_compose(const EulerAngles& a);

/// Inverse of euler_compose up to the coordinate degeneracies at theta = 0
/// and theta = pi (delta fixed to 0 there).  Throws std::invalid_argument if
/// the input is not unitary to 1e-9.
EulerAngles euler_decompose(const Eigen::Matrix2cd& u);

/// Haar-distributed U(2) sample from the deterministic counter stream
/// (seed, index), via QR of a Ginibre matrix with phase fixing.
Eigen::Matrix2cd haar_sample(std::uint64_t seed, std::uint64_t index);

/// Generalized spherical function P^{(l)}_{mk}(cos theta), |m|,|k| <= l,
/// by the contour-integral representation evaluated with a trapezoid rule
/// (exact for the trigonometric-polynomial integrand at >= 2l+2 nodes).
std::complex<double> wigner_p(int l, int m, int k, double theta);

/// Matrix element t^{(l)}_{mk}(U) = P^{(l)}_{mk}(cos theta) e^{i(m phi + k psi)}
/// with phi = sigma + delta, psi = sigma - delta.
std::complex<double> wigner_t(int l, int m, int k, const EulerAngles& a);

/// A pair of 2x2 Hermitian perturbations R1, R2 around the saddle and the
/// derived symmetrized matrix S = (1/2){1 + R1/sqrt(W), 1 + R2/sqrt(W)}.
struct HermitianPair {
  Eigen::Matrix2cd r1 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd r2 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd s(double w) const;
};

/// Quadrature controls for the group brackets (Gauss-Legendre windows around
/// the weight's Gaussian peak in theta/sigma/gamma, trapezoid in delta).
struct BracketGrid {
  int n_main = 64;
  int n_delta = 24;
  double n_sigma_window = 9.0;
};

/// Normalized average <f> under the peaked group weight
/// exp{-2 u*^2 W^2 TrS (1 - cos(theta/2) cos(sigma) cos(gamma))}
/// with the mass-one measure (1/(8 pi^3)) sin(theta) dtheta dsigma ddelta dgamma.
std::complex<double> k_bracket(
    const HermitianPair& pair, double w, double u_star,
    const std::function<std::complex<double>(const EulerAngles&)>& f,
    const BracketGrid& grid = {});

/// Heat-kernel eigenvalue: <t^{(l)}_{00}> at R1 = R2 = 0.  Approaches
/// 1 - l(l+1)/(2 (u* W)^2) with an O(W^{-4}) error.
double heat_eig(int l, double w, double u_star, const BracketGrid& grid = {});

/// Normalized partition function of the expanded weight
/// k(U) = u*^2 W^2 Tr((U - 1)(1 + R1/sqrt(W))(1 + R2/sqrt(W))) + c.c.,
/// Zcal = (2 W^4/pi^2) sqrt(J(R1) J(R2)) Integral(e^k dU), together with its
/// second-order expansion 1 + Delta,
/// Delta = u*^2 Tr([R2,R1][R1,R2]) / (2 TrS)
///       - Tr((R1o + R2o)^2) / (4 W TrS),   Ao = A - (TrA/2) I.
struct ZExpansion {
  double z_quad = 0.0;       ///< Zcal by quadrature
  double delta_formula = 0.0;
  double remainder = 0.0;    ///< z_quad - 1 - delta_formula
};
ZExpansion z_expansion_check(const HermitianPair& pair, double w,
                             double u_star, const BracketGrid& grid = {});

/// Modified Bessel function I0: power series for x <= 15, classical
/// asymptotic e^x/sqrt(2 pi x)(1 + 1/(8x) + ...) beyond; log variant for
/// overflow-free ratios.
double bessel_i0(double x);
double log_bessel_i0(double x);

/// Two-sided singular-value factorization check: compares
///   group:  mean over Haar pairs (V1,V2) of
///           exp{2 W^2 Re Tr(V1 Lambda1 V2 Lambda2)}
///           * (mu11^2 - mu12^2)(mu21^2 - mu22^2) * sqrt(det L1 det L2)
///   bessel: det{ I0(2 W^2 mu_{1i} mu_{2j}) } * sqrt(det L1 det L2)
/// as a ratio across two singular-value quadruples (shared Haar samples,
/// paired bootstrap), where the unknown overall constant cancels.
struct BerezinResult {
  double group_ratio = 0.0;
  double bessel_ratio = 0.0;
  double group_stderr = 0.0;
};
BerezinResult berezin_check(const std::array<double, 4>& set_a,
                            const std::array<double, 4>& set_b, double w,
                            std::size_t samples, std::uint64_t seed,
                            int workers = 0);

}  // namespace bandpoly
