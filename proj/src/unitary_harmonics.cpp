#include "bandpoly/unitary_harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bandpoly/quadrature.hpp"
#include "bandpoly/rng.hpp"

namespace bandpoly {

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

double wrap_pi(double x) {
  while (x > kPi) x -= 2.0 * kPi;
  while (x < -kPi) x += 2.0 * kPi;
  return x;
}

std::complex<double> ipow(std::complex<double> b, int e) {
  std::complex<double> r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}
}  // namespace

Eigen::Matrix2cd euler_compose(const EulerAngles& a) {
  const double c = std::cos(a.theta / 2), s = std::sin(a.theta / 2);
  Eigen::Matrix2cd u;
  u(0, 0) = c * std::exp(kI * (a.sigma + a.gamma));
  u(0, 1) = kI * s * std::exp(kI * (a.delta + a.gamma));
  u(1, 0) = kI * s * std::exp(kI * (-a.delta + a.gamma));
  u(1, 1) = c * std::exp(kI * (-a.sigma + a.gamma));
  return u;
}

EulerAngles euler_decompose(const Eigen::Matrix2cd& u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() > 1e-9)
    throw std::invalid_argument("euler_decompose: input is not unitary");
  EulerAngles a;
  const std::complex<double> det = u.determinant();
  a.gamma = 0.5 * std::arg(det);  // in [-pi/2, pi/2]
  const Eigen::Matrix2cd v = std::exp(-kI * a.gamma) * u;
  const double c = std::abs(v(0, 0)), s = std::abs(v(0, 1));
  a.theta = 2.0 * std::atan2(s, c);
  if (s > 1e-15) a.delta = wrap_pi(std::arg(v(0, 1)) - kPi / 2);
  if (c > 1e-15) a.sigma = wrap_pi(std::arg(v(0, 0)));
  return a;
}

Eigen::Matrix2cd haar_sample(std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed, 0x68616172ULL, index);
  Eigen::Matrix2cd g;
  g(0, 0) = rng.complex_gaussian(0);
  g(1, 0) = rng.complex_gaussian(1);
  g(0, 1) = rng.complex_gaussian(2);
  g(1, 1) = rng.complex_gaussian(3);
  // Gram-Schmidt with positive diagonal R gives the Haar distribution.
  Eigen::Vector2cd q1 = g.col(0) / g.col(0).norm();
  Eigen::Vector2cd q2 = g.col(1) - q1 * (q1.adjoint() * g.col(1));
  q2 /= q2.norm();
  Eigen::Matrix2cd u;
  u.col(0) = q1;
  u.col(1) = q2;
  return u;
}

std::complex<double> wigner_p(int l, int m, int k, double theta) {
  if (l < 0 || std::abs(m) > l || std::abs(k) > l)
    throw std::invalid_argument("wigner_p: need |m|, |k| <= l");
  const int q = m - k;
  const double log_mu =
      0.5 * (std::lgamma(l - m + 1.0) + std::lgamma(l + m + 1.0) -
             std::lgamma(l - k + 1.0) - std::lgamma(l + k + 1.0));
  const double mu = std::exp(log_mu);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  // Trapezoid on the phase circle; the integrand is a trigonometric
  // polynomial of degree <= 2l, so 2l+4 nodes integrate it exactly.
  const int nn = 2 * l + 4;
  std::complex<double> acc = 0.0;
  for (int j = 0; j < nn; ++j) {
    const double phi = 2.0 * kPi * j / nn;
    const std::complex<double> e = std::exp(kI * phi);
    acc += ipow(c + kI * s * e, l + k) * ipow(c + kI * s / e, l - k) *
           std::exp(kI * (static_cast<double>(q) * phi));
  }
  return mu * acc / static_cast<double>(nn);
}

std::complex<double> wigner_t(int l, int m, int k, const EulerAngles& a) {
  const double phi = a.sigma + a.delta, psi = a.sigma - a.delta;
  return wigner_p(l, m, k, a.theta) * std::exp(kI * (m * phi + k * psi));
}

Eigen::Matrix2cd HermitianPair::s(double w) const {
  const double sw = std::sqrt(w);
  const Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity() + r1 / sw;
  const Eigen::Matrix2cd b = Eigen::Matrix2cd::Identity() + r2 / sw;
  return 0.5 * (a * b + b * a);
}

std::complex<double> k_bracket(
    const HermitianPair& pair, double w, double u_star,
    const std::function<std::complex<double>(const EulerAngles&)>& f,
    const BracketGrid& grid) {
  const double tr_s = pair.s(w).trace().real();
  const double beta = 2.0 * u_star * u_star * w * w * tr_s;
  const double std_th = std::sqrt(8.0 / beta);
  const double std_sg = std::sqrt(1.0 / beta);
  const double wth = std::min(kPi, grid.n_sigma_window * std_th);
  const double wsg = std::min(kPi, grid.n_sigma_window * std_sg);
  const double wgm = std::min(kPi / 2, grid.n_sigma_window * std_sg);

  const GaussLegendre th = gauss_legendre(grid.n_main, 0.0, wth);
  const GaussLegendre sg = gauss_legendre(grid.n_main, -wsg, wsg);
  const GaussLegendre gm = gauss_legendre(grid.n_main, -wgm, wgm);

  std::complex<double> num = 0.0;
  double den = 0.0;
  EulerAngles a;
  for (int it = 0; it < grid.n_main; ++it) {
    a.theta = th.nodes[it];
    const double ct = std::cos(a.theta / 2);
    const double sin_meas = std::sin(a.theta) * th.weights[it];
    for (int is = 0; is < grid.n_main; ++is) {
      a.sigma = sg.nodes[is];
      const double cs = std::cos(a.sigma);
      for (int id = 0; id < grid.n_delta; ++id) {
        a.delta = -kPi + 2.0 * kPi * id / grid.n_delta;
        const double wd = 2.0 * kPi / grid.n_delta;
        for (int ig = 0; ig < grid.n_main; ++ig) {
          a.gamma = gm.nodes[ig];
          const double wgt =
              sin_meas * sg.weights[is] * wd * gm.weights[ig] *
              std::exp(-beta * (1.0 - ct * cs * std::cos(a.gamma)));
          num += wgt * f(a);
          den += wgt;
        }
      }
    }
  }
  return num / den;
}

double heat_eig(int l, double w, double u_star, const BracketGrid& grid) {
  // t00 depends on theta only; k_bracket iterates theta outermost, so a
  // single-slot cache reduces the P00 work to one evaluation per theta node.
  double last_theta = -1.0;
  double last_val = 0.0;
  BracketGrid g = grid;
  g.n_delta = 4;  // delta-independent integrand
  const auto f = [&](const EulerAngles& a) -> std::complex<double> {
    if (a.theta != last_theta) {
      last_theta = a.theta;
      last_val = wigner_p(l, 0, 0, a.theta).real();
    }
    return last_val;
  };
  const HermitianPair zero;
  return k_bracket(zero, w, u_star, f, g).real();
}

ZExpansion z_expansion_check(const HermitianPair& pair, double w,
                             double u_star, const BracketGrid& grid) {
  const double sw = std::sqrt(w);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd p = (id + pair.r1 / sw) * (id + pair.r2 / sw);
  const double tr_s = pair.s(w).trace().real();
  const double u2w2 = u_star * u_star * w * w;
  const double beta = 2.0 * u2w2 * tr_s;
  const double std_th = std::sqrt(8.0 / beta);
  const double std_sg = std::sqrt(1.0 / beta);
  const double wth = std::min(kPi, grid.n_sigma_window * std_th);
  const double wsg = std::min(kPi, grid.n_sigma_window * std_sg);
  const double wgm = std::min(kPi / 2, grid.n_sigma_window * std_sg);

  const GaussLegendre th = gauss_legendre(grid.n_main, 0.0, wth);
  const GaussLegendre sg = gauss_legendre(grid.n_main, -wsg, wsg);
  const GaussLegendre gm = gauss_legendre(grid.n_main, -wgm, wgm);

  double tot = 0.0;
  for (int it = 0; it < grid.n_main; ++it) {
    const double t = th.nodes[it];
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    const double meas_t = std::sin(t) * th.weights[it];
    for (int is = 0; is < grid.n_main; ++is) {
      const std::complex<double> es = std::exp(kI * sg.nodes[is]);
      for (int id2 = 0; id2 < grid.n_delta; ++id2) {
        const double d = -kPi + 2.0 * kPi * id2 / grid.n_delta;
        const double wd = 2.0 * kPi / grid.n_delta;
        const std::complex<double> ed = std::exp(kI * d);
        Eigen::Matrix2cd u0;
        u0(0, 0) = c * es;
        u0(0, 1) = kI * s * ed;
        u0(1, 0) = kI * s / ed;
        u0(1, 1) = c / es;
        // Tr((U - 1) P) with U = e^{i gamma} U0.
        const std::complex<double> tr_u0p = (u0 * p).trace();
        const std::complex<double> tr_p = p.trace();
        for (int ig = 0; ig < grid.n_main; ++ig) {
          const std::complex<double> eg = std::exp(kI * gm.nodes[ig]);
          const double k = 2.0 * (u2w2 * (eg * tr_u0p - tr_p)).real();
          tot += meas_t * sg.weights[is] * wd * gm.weights[ig] * std::exp(k);
        }
      }
    }
  }
  const double integ = tot / (8.0 * kPi * kPi * kPi);

  const auto polar_vol = [&](const Eigen::Matrix2cd& r) {
    const Eigen::Matrix2cd m = u_star * (id + r / sw);
    const double tr = m.trace().real();
    return kPi * kPi * kPi * tr * tr * m.determinant().real();
  };

  ZExpansion out;
  out.z_quad = (2.0 * w * w * w * w / (kPi * kPi)) *
               std::sqrt(polar_vol(pair.r1) * polar_vol(pair.r2)) * integ;

  const auto circ = [&](const Eigen::Matrix2cd& m) -> Eigen::Matrix2cd {
    return m - (m.trace() / 2.0) * id;
  };
  const Eigen::Matrix2cd comm = pair.r1 * pair.r2 - pair.r2 * pair.r1;
  const Eigen::Matrix2cd sum_circ = circ(pair.r1) + circ(pair.r2);
  out.delta_formula =
      (u_star * u_star / (2.0 * tr_s)) * (-(comm * comm)).trace().real() -
      (sum_circ * sum_circ).trace().real() / (4.0 * w * tr_s);
  out.remainder = out.z_quad - 1.0 - out.delta_formula;
  return out;
}

double bessel_i0(double x) {
  x = std::abs(x);
  if (x <= 15.0) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= (x * x) / (4.0 * k * k);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return std::exp(log_bessel_i0(x));
}

double log_bessel_i0(double x) {
  x = std::abs(x);
  if (x <= 15.0) return std::log(bessel_i0(x));
  // Classical asymptotic e^x / sqrt(2 pi x) * sum a_k / x^k, truncated at the
  // smallest term.
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 20; ++k) {
    const double next =
        term * (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0) * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return x - 0.5 * std::log(2.0 * kPi * x) + std::log(sum);
}

BerezinResult berezin_check(const std::array<double, 4>& set_a,
                            const std::array<double, 4>& set_b, double w,
                            std::size_t samples, std::uint64_t seed,
                            int workers) {
  const auto const_factor = [](const std::array<double, 4>& s) {
    const double d1 = s[0] * s[0] - s[1] * s[1];
    const double d2 = s[2] * s[2] - s[3] * s[3];
    return d1 * d2 * std::sqrt(s[0] * s[1] * s[2] * s[3]);
  };
  const double w2 = w * w;
  const auto group_value = [&](const std::array<double, 4>& s,
                               const Eigen::Matrix2cd& v1,
                               const Eigen::Matrix2cd& v2) {
    const Eigen::Vector2cd l1(s[0], s[1]), l2(s[2], s[3]);
    const std::complex<double> tr =
        (v1 * l1.asDiagonal() * v2 * l2.asDiagonal()).trace();
    return std::exp(2.0 * w2 * tr.real());
  };

  std::vector<double> ga(samples), gb(samples);
  const int nw = resolve_workers(workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nw)
#endif
  for (long long i = 0; i < static_cast<long long>(samples); ++i) {
    const Eigen::Matrix2cd v1 = haar_sample(seed, 2 * i);
    const Eigen::Matrix2cd v2 = haar_sample(seed, 2 * i + 1);
    ga[i] = group_value(set_a, v1, v2);
    gb[i] = group_value(set_b, v1, v2);
  }
  (void)nw;

  const auto mean_of = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
  };
  const double ca = const_factor(set_a), cb = const_factor(set_b);

  BerezinResult out;
  out.group_ratio = (mean_of(ga) * ca) / (mean_of(gb) * cb);

  // The determinant of Bessel factors already carries the singular-value
  // Vandermonde structure, so only the sqrt(det Lambda) factor appears here.
  const auto bessel_det = [&](const std::array<double, 4>& s) {
    return (bessel_i0(2.0 * w2 * s[0] * s[2]) * bessel_i0(2.0 * w2 * s[1] * s[3]) -
            bessel_i0(2.0 * w2 * s[0] * s[3]) * bessel_i0(2.0 * w2 * s[1] * s[2])) *
           std::sqrt(s[0] * s[1] * s[2] * s[3]);
  };
  out.bessel_ratio = bessel_det(set_a) / bessel_det(set_b);

  // Paired bootstrap of the ratio (shared indices for numerator and
  // denominator preserve the common-sample coupling).
  const int nb = 200;
  const CounterRng rng(seed, 0x62657a62ULL);
  std::vector<double> reps(nb);
  for (int b = 0; b < nb; ++b) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::uint64_t c = static_cast<std::uint64_t>(b) * samples + i;
      const std::size_t j =
          static_cast<std::size_t>(rng.uniform(c) * samples);
      sa += ga[j];
      sb += gb[j];
    }
    reps[b] = (sa * ca) / (sb * cb);
  }
  double mean = 0.0;
  for (double x : reps) mean += x;
  mean /= nb;
  double s2 = 0.0;
  for (double x : reps) s2 += (x - mean) * (x - mean);
  out.group_stderr = std::sqrt(s2 / (nb - 1));
  return out;
}

}  // namespace bandpoly
