#include "bandpoly/saddle_core.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bandpoly/quadrature.hpp"
#include "bandpoly/rng.hpp"

namespace bandpoly {

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};
}  // namespace

Eigen::Matrix4cd q_block(const QMatrix& q, std::complex<double> z1,
                         std::complex<double> z2) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = z1;
  m(1, 1) = z2;
  m(2, 2) = std::conj(z1);
  m(3, 3) = std::conj(z2);
  m.block<2, 2>(0, 2) = kI * q;
  m.block<2, 2>(2, 0) = kI * q.adjoint();
  return m;
}

std::complex<double> q_block_det(const QMatrix& q, std::complex<double> z1,
                                 std::complex<double> z2) {
  const double n11 = std::norm(q(0, 0)), n12 = std::norm(q(0, 1));
  const double n21 = std::norm(q(1, 0)), n22 = std::norm(q(1, 1));
  const double ndet = std::norm(q.determinant());
  return std::norm(z1) * std::norm(z2) + ndet + std::norm(z2) * n11 +
         z1 * std::conj(z2) * n21 + std::conj(z1) * z2 * n12 +
         std::norm(z1) * n22;
}

std::complex<double> f_action(const QMatrix& q, const SpectralPoint& point) {
  const std::complex<double> det = q_block_det(q, point.z1, point.z2);
  const double trqq = (q.adjoint() * q).trace().real();
  return 0.5 * (-trqq + std::log(det) + 2.0 * point.u_star * point.u_star);
}

std::complex<double> log_transfer_kernel(const QMatrix& q1, const QMatrix& q2,
                                         const SpectralPoint& point) {
  const QMatrix d = q1 - q2;
  const double w2 = point.w * point.w;
  const double dist = (d * d.adjoint()).trace().real();
  const double log_const = std::log(kPi * kPi * kPi * kPi) +
                           4.0 * std::log(point.w) -
                           2.0 * std::log(point.lambda_star);
  return log_const - w2 * dist + f_action(q1, point) + f_action(q2, point);
}

std::complex<double> transfer_kernel(const QMatrix& q1, const QMatrix& q2,
                                     const SpectralPoint& point) {
  return std::exp(log_transfer_kernel(q1, q2, point));
}

bool in_saddle_region(const QMatrix& q, const SpectralPoint& point) {
  const double u2 = point.u_star * point.u_star;
  const Eigen::Matrix2cd m = q.adjoint() * q - u2 * Eigen::Matrix2cd::Identity();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
  const double norm2 = es.eigenvalues().cwiseAbs().maxCoeff();
  return norm2 <= std::log(point.w) / std::sqrt(point.w);
}

PolarForm polar_form(const QMatrix& q) {
  const Eigen::JacobiSVD<QMatrix> svd(
      q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d s = svd.singularValues();
  PolarForm p;
  p.r = svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint();
  p.u = svd.matrixU() * svd.matrixV().adjoint();
  const double tr = p.r.trace().real();
  p.jacobian = kPi * kPi * kPi * tr * tr * p.r.determinant().real();
  return p;
}

SvdForm svd_form(const QMatrix& q) {
  const Eigen::JacobiSVD<QMatrix> svd(q);
  SvdForm f;
  f.mu1 = svd.singularValues()(0);
  f.mu2 = svd.singularValues()(1);
  const double d = f.mu1 * f.mu1 - f.mu2 * f.mu2;
  f.jacobian = 4.0 * kPi * kPi * kPi * kPi * d * d * f.mu1 * f.mu2;
  return f;
}

double haar_avg_q_block_det(double mu1, double mu2, std::complex<double> z1,
                            std::complex<double> z2) {
  // The 16-pair average over {I, sx, dz, sx*dz} on each side reproduces the
  // Haar average exactly: the integrand depends on Q only through |Q_ab|^2
  // and |det Q|^2, and the pair set matches Haar on all such monomials.
  static const std::array<QMatrix, 4> vset = [] {
    QMatrix id = QMatrix::Identity();
    QMatrix sx;
    sx << 0, 1, 1, 0;
    QMatrix dz;
    dz << 1, 0, 0, -1;
    return std::array<QMatrix, 4>{id, sx, dz, QMatrix(sx * dz)};
  }();
  const QMatrix lam = Eigen::Vector2cd(mu1, mu2).asDiagonal();
  std::complex<double> acc = 0.0;
  for (const auto& v1 : vset)
    for (const auto& v2 : vset) acc += q_block_det(v1 * lam * v2, z1, z2);
  return (acc / 16.0).real();
}

ThetaN1 theta_n1_check(std::complex<double> z1, std::complex<double> z2,
                       std::size_t mc_samples, std::uint64_t seed,
                       int quad_nodes) {
  ThetaN1 out;
  out.wick = theta_wick_n1(z1, z2);

  // Direct MC: x = sqrt(1/2)(g1 + i g2), E|x|^2 = 1.
  const CounterRng rng(seed, 0x6e31ULL);
  double sum = 0.0, sum2 = 0.0;
  const double amp = std::sqrt(0.5);
  for (std::size_t i = 0; i < mc_samples; ++i) {
    const std::complex<double> x = amp * rng.complex_gaussian(i);
    const double v = std::norm(x - z1) * std::norm(x - z2);
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(mc_samples);
  out.mc = sum / n;
  out.mc_stderr = std::sqrt((sum2 / n - out.mc * out.mc) / (n - 1));

  // Singular-value quadrature of the dual representation, volume constant
  // calibrated at z1 = z2 = 0 where the exact value is 2.
  const GaussLegendre gl = gauss_legendre(quad_nodes, 0.0, 6.0);
  double raw = 0.0, raw0 = 0.0;
  for (int i = 0; i < quad_nodes; ++i) {
    const double m1 = gl.nodes[i];
    for (int j = 0; j < quad_nodes; ++j) {
      const double m2 = gl.nodes[j];
      const double d = m1 * m1 - m2 * m2;
      const double jac = d * d * m1 * m2;
      const double wgt = gl.weights[i] * gl.weights[j] * jac *
                         std::exp(-(m1 * m1 + m2 * m2));
      raw += wgt * haar_avg_q_block_det(m1, m2, z1, z2);
      raw0 += wgt * (m1 * m1 * m2 * m2);  // det value at z1 = z2 = 0
    }
  }
  out.quadrature = 2.0 * raw / raw0;
  return out;
}

}  // namespace bandpoly
