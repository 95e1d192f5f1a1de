#include "bandpoly/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <vector>

#include "bandpoly/band_model.hpp"
#include "bandpoly/crossover_model.hpp"
#include "bandpoly/gaussian_spectral.hpp"
#include "bandpoly/mc_lab.hpp"
#include "bandpoly/rng.hpp"
#include "bandpoly/saddle_core.hpp"
#include "bandpoly/scan.hpp"
#include "bandpoly/unitary_harmonics.hpp"

namespace bandpoly {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, auto... args) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf), f, args...);
  return std::string(buf);
}

// --- band-model -------------------------------------------------------------

CriterionResult check_profile(std::uint64_t, int) {
  CriterionResult r{"band-model/profile"};
  double worst_sum = 0.0, worst_sym = 0.0;
  for (int n : {1, 16, 256}) {
    for (double w : {1.0, 8.0, 32.0}) {
      const BandProfile p = build_profile(n, w);
      worst_sum = std::max(
          worst_sum, (p.j.rowwise().sum().array() - 1.0).abs().maxCoeff());
      worst_sym = std::max(worst_sym, (p.j - p.j.transpose()).cwiseAbs().maxCoeff());
    }
  }
  const BandProfile p21 = build_profile(2, 1.0);
  Eigen::Matrix2d expect;
  expect << 2.0 / 3, 1.0 / 3, 1.0 / 3, 2.0 / 3;
  const double small = (p21.j - expect).cwiseAbs().maxCoeff();
  r.pass = worst_sum <= 1e-12 && worst_sym <= 1e-13 && small <= 1e-14;
  r.detail = fmt("row-sum err %.2e (<=1e-12), asymmetry %.2e (<=1e-13), "
                 "2x2 case err %.2e (<=1e-14)",
                 worst_sum, worst_sym, small);
  return r;
}

// --- saddle-core ------------------------------------------------------------

CriterionResult check_theta_n1(std::uint64_t seed, int) {
  CriterionResult r{"saddle-core/theta-n1"};
  const CounterRng rng(seed, 0x74686574ULL);
  r.pass = true;
  double worst_quad = 0.0, worst_sigma = 0.0;
  for (int t = 0; t < 5; ++t) {
    const double r1 = std::sqrt(0.9 * rng.uniform(4 * t));
    const double r2 = std::sqrt(0.9 * rng.uniform(4 * t + 1));
    const std::complex<double> z1 = std::polar(r1, 2 * kPi * rng.uniform(4 * t + 2));
    const std::complex<double> z2 = std::polar(r2, 2 * kPi * rng.uniform(4 * t + 3));
    const ThetaN1 th = theta_n1_check(z1, z2, 1'000'000, seed + t);
    const double sig = std::abs(th.mc - th.wick) / th.mc_stderr;
    const double rel = std::abs(th.quadrature / th.wick - 1.0);
    worst_sigma = std::max(worst_sigma, sig);
    worst_quad = std::max(worst_quad, rel);
    if (sig > 4.0 || rel > 1e-3) r.pass = false;
  }
  r.detail = fmt("5 bulk pairs: MC worst %.2f sigma (<=4), quadrature worst "
                 "rel %.2e (<=1e-3)",
                 worst_sigma, worst_quad);
  return r;
}

// --- gaussian-spectral ------------------------------------------------------

CriterionResult check_kernel_spectrum(std::uint64_t, int) {
  CriterionResult r{"gaussian-spectral/kernel-spectrum"};
  double worst_rel = 0.0, worst_top = 0.0, worst_q = 0.0;
  for (double w : {5.0, 10.0, 20.0, 40.0}) {
    for (double u : {0.5, 0.8, 1.0}) {
      const GaussKernel1D k = gauss_kernel(w, u);
      const MehlerSpectrum mehler = mehler_spectrum(k, 8);
      const double alpha = u * std::sqrt(2.0 + u * u / (w * w));
      const double lam_star = 1.0 - (alpha - u * u / w) / w;
      worst_q = std::max(worst_q, std::abs(mehler.q - lam_star));
      const std::vector<double> eig = nystrom_eigs(k, nystrom_grid(w, u), 9);
      worst_top = std::max(worst_top, std::abs(eig[0] - 1.0));
      double geom = 1.0;
      for (int m = 0; m <= 8; ++m) {
        worst_rel = std::max(worst_rel, std::abs(eig[m] / geom - 1.0));
        geom *= lam_star;
      }
    }
  }
  r.pass = worst_rel <= 1e-8 && worst_top <= 1e-8 && worst_q <= 1e-14;
  r.detail = fmt("eig rel err %.2e (<=1e-8), top-1 %.2e (<=1e-8), "
                 "geometric-ratio identity err %.2e (<=1e-14)",
                 worst_rel, worst_top, worst_q);
  return r;
}

// --- unitary-harmonics ------------------------------------------------------

CriterionResult check_heat_eigs(std::uint64_t, int) {
  CriterionResult r{"unitary-harmonics/heat-eigs"};
  const double u = 1.0;
  r.pass = true;
  double worst_ratio = 1e300, dev80l1 = 0.0;
  for (int l = 1; l <= 4; ++l) {
    double prev = 0.0;
    for (double w : {20.0, 40.0, 80.0}) {
      const double eig = heat_eig(l, w, u);
      const double closed = 1.0 - l * (l + 1) / (2.0 * u * u * w * w);
      const double dev = std::abs(eig - closed);
      if (prev > 0.0) {
        const double ratio = prev / dev;
        worst_ratio = std::min(worst_ratio, ratio);
        if (ratio < 8.0) r.pass = false;
      }
      if (l == 1 && w == 80.0) {
        dev80l1 = dev;
        if (dev > 1e-6) r.pass = false;
      }
      prev = dev;
    }
  }
  r.detail = fmt("closed-form deviation shrinks >= %.1fx per W-doubling "
                 "(>=8), W=80 l=1 deviation %.2e (<=1e-6)",
                 worst_ratio, dev80l1);
  return r;
}

CriterionResult check_z_expansion(std::uint64_t, int) {
  CriterionResult r{"unitary-harmonics/z-expansion"};
  const double u = 0.8;
  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  const Eigen::Matrix2cd dg = Eigen::Vector2cd(0.3, -0.1).asDiagonal();
  const Eigen::Matrix2cd dd = Eigen::Vector2cd(1.0, -0.5).asDiagonal();

  // Differences scale as 1/sqrt(W), keeping every pair inside the
  // log(W)/sqrt(W) saddle window without polluting the W^{-2} remainder.
  using PairFn = std::function<HermitianPair(double)>;
  const std::vector<PairFn> pairs = {
      [&](double) { return HermitianPair{}; },
      [&](double) { return HermitianPair{dg, dg}; },
      [&](double w) { return HermitianPair{dg, dg + (0.6 / std::sqrt(w)) * dd}; },
      [&](double w) {
        return HermitianPair{0.4 * sx, 0.4 * sx + (0.6 / std::sqrt(w)) * sy};
      },
      [&](double w) {
        return HermitianPair{0.4 * sx, 0.4 * sx + (1.0 / std::sqrt(w)) * sy};
      }};

  r.pass = true;
  double worst_exp = 1e300, c_measured = 0.0;
  for (const auto& mk : pairs) {
    double rem20 = 0.0, rem80 = 0.0;
    for (double w : {20.0, 40.0, 80.0}) {
      const ZExpansion z = z_expansion_check(mk(w), w, u);
      const double rem = std::abs(z.remainder);
      c_measured = std::max(c_measured, rem * w * w);
      if (w == 20.0) rem20 = rem;
      if (w == 80.0) rem80 = rem;
    }
    const double exponent = std::log2(rem20 / rem80) / 2.0;
    worst_exp = std::min(worst_exp, exponent);
    if (exponent < 1.9) r.pass = false;
  }
  r.detail = fmt("5 pairs incl. non-commuting: remainder scaling exponent "
                 ">= %.2f (>=1.9), measured C = %.3f",
                 worst_exp, c_measured);
  return r;
}

CriterionResult check_berezin(std::uint64_t seed, int workers) {
  CriterionResult r{"unitary-harmonics/berezin"};
  const double w = 2.0;  // W^2 mu mu' <= 5 throughout
  const std::vector<std::pair<std::array<double, 4>, std::array<double, 4>>>
      quads = {{{1.1, 0.5, 0.9, 0.4}, {1.0, 0.6, 0.8, 0.3}},
               {{0.9, 0.3, 1.0, 0.5}, {1.1, 0.4, 0.7, 0.2}},
               {{0.8, 0.45, 0.95, 0.35}, {1.05, 0.55, 0.85, 0.25}}};
  r.pass = true;
  double worst_sigma = 0.0;
  for (std::size_t i = 0; i < quads.size(); ++i) {
    const BerezinResult b = berezin_check(quads[i].first, quads[i].second, w,
                                          1'000'000, seed + 11 * i, workers);
    const double sig = std::abs(b.group_ratio - b.bessel_ratio) / b.group_stderr;
    worst_sigma = std::max(worst_sigma, sig);
    if (sig > 3.0) r.pass = false;
  }
  r.detail = fmt("3 quadruples at 1e6 Haar pairs: worst |group-bessel| = "
                 "%.2f sigma (<=3)",
                 worst_sigma);
  return r;
}

CriterionResult check_wigner_asymptotics(std::uint64_t, int) {
  CriterionResult r{"unitary-harmonics/wigner-asymptotics"};
  double kappa = 0.0;
  for (int l = 1; l <= 64; ++l) {
    for (int i = 1; i <= 40; ++i) {
      const double x = 0.1 * i / 40.0;       // x = l sin(theta/2) <= 0.1
      const double sh = x / l;
      if (sh > 1.0) break;
      const double theta = 2.0 * std::asin(sh);
      const double p = wigner_p(l, 0, 0, theta).real();
      const double quad = 1.0 - l * (l + 1) * sh * sh;
      kappa = std::max(kappa, std::abs(p - quad) / (x * x * x));
    }
  }
  double l1_err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double theta = kPi * i / 100.0;
    // l = 1 zonal case is cos(theta) exactly.
    l1_err = std::max(l1_err,
                      std::abs(wigner_p(1, 0, 0, theta).real() - std::cos(theta)));
  }
  r.pass = kappa <= 5.0 && l1_err <= 1e-12;
  r.detail = fmt("fitted kappa %.4f (<=5) over l<=64, l*sin(theta/2)<=0.1; "
                 "l=1 exactness %.2e (<=1e-12)",
                 kappa, l1_err);
  return r;
}

// --- crossover-model --------------------------------------------------------

CriterionResult check_crossover_limits(std::uint64_t, int) {
  CriterionResult r{"crossover-model/limits"};
  const long n = 1'000'000;
  const double w_hi = 100'000.0;              // W^2/N = 1e4
  const double w_lo = std::sqrt(1e-3 * n);    // W^2/N = 1e-3
  r.pass = true;
  double worst_gin = 0.0, worst_loc = 0.0, worst_semi = 0.0;
  for (double za : {0.5, 0.8, 1.0}) {
    const std::complex<double> zeta(za, 0.0);
    const SpectralPoint hi = make_spectral_point(0.0, zeta, n, w_hi);
    const double gin_rel =
        std::abs(predict_ratios(n, w_hi, hi).gin_pred / ginibre_limit(zeta) - 1.0);
    worst_gin = std::max(worst_gin, gin_rel);
    if (gin_rel > 1e-3) r.pass = false;

    const SpectralPoint lo = make_spectral_point(0.0, zeta, n, w_lo);
    const double loc_dev = std::abs(predict_ratios(n, w_lo, lo).loc_pred - 1.0);
    worst_loc = std::max(worst_loc, loc_dev);
    if (loc_dev > 1e-3) r.pass = false;

    // Semigroup identity: damping switched off, the walk exponentiates nu.
    EffectiveMatrix free_walk;
    free_walk.m0 = 40;
    free_walk.d = (2.0 / n) * nu_matrix(za, 40);
    const double semi = matrix_power_00(free_walk, n);
    const double z2 = za * za;
    const double target = std::sinh(2.0 * z2) / (2.0 * z2);
    const double semi_dev = std::abs(semi - target);
    worst_semi = std::max(worst_semi, semi_dev);
    if (semi_dev > 1e-4) r.pass = false;
  }
  r.detail = fmt("Ginibre-side rel err %.2e (<=1e-3); localized-side dev "
                 "%.2e (<=1e-3); semigroup dev %.2e (<=1e-4)",
                 worst_gin, worst_loc, worst_semi);
  return r;
}

// --- desk-scale crossover + determinism -------------------------------------

ScanResult desk_scan(std::uint64_t seed, int workers) {
  return crossover_scan(64, 0.5, 0.8, {3, 6, 12, 24, 48}, 20'000, seed, 0,
                        workers);
}

CriterionResult check_crossover_scan(std::uint64_t seed, int workers) {
  CriterionResult r{"mc-lab/crossover-scan"};
  const ScanResult s = desk_scan(seed, workers);
  bool a = true, c = true;
  for (const ScanPoint& p : s.points) {
    if (!(p.mc.gin.value <= 1.0)) a = false;
    if (std::abs(p.mc.gin.value - p.gin_pred) >
        std::max(3.0 * p.mc.gin.stderr_, 0.05))
      c = false;
    if (std::abs(p.mc.loc.value - p.loc_pred) >
        std::max(3.0 * p.mc.loc.stderr_, 0.07))
      c = false;
  }
  const bool b = s.gap > 0.04 && s.gap > 3.0 * s.gap_stderr;
  const ScanPoint& p3 = s.points.front();
  const bool d = std::abs(p3.mc.loc.value - 1.0) <=
                 std::max(3.0 * p3.mc.loc.stderr_, 0.05);
  r.pass = a && b && c && d;
  r.detail = fmt("(a) gin<=1 %s; (b) gap %.3f +- %.3f, >0.04 at 3 sigma %s; "
                 "(c) model agreement %s; (d) loc(w=3) = %.3f near 1 %s",
                 a ? "pass" : "FAIL", s.gap, s.gap_stderr, b ? "pass" : "FAIL",
                 c ? "pass" : "FAIL", p3.mc.loc.value, d ? "pass" : "FAIL");
  return r;
}

CriterionResult check_determinism(std::uint64_t seed, int) {
  CriterionResult r{"cli-experiments/determinism"};
  const std::string csv1 = scan_csv(desk_scan(seed, 1));
  const std::string csv8 = scan_csv(desk_scan(seed, 8));
  r.pass = csv1 == csv8;
  r.detail = r.pass ? "1-worker and 8-worker scan CSVs byte-identical"
                    : "worker count changed the output bytes";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter,
                                            std::uint64_t seed, int workers) {
  using Check = CriterionResult (*)(std::uint64_t, int);
  const std::vector<std::pair<std::string, Check>> checks = {
      {"band-model/profile", check_profile},
      {"saddle-core/theta-n1", check_theta_n1},
      {"gaussian-spectral/kernel-spectrum", check_kernel_spectrum},
      {"unitary-harmonics/heat-eigs", check_heat_eigs},
      {"unitary-harmonics/z-expansion", check_z_expansion},
      {"unitary-harmonics/berezin", check_berezin},
      {"unitary-harmonics/wigner-asymptotics", check_wigner_asymptotics},
      {"crossover-model/limits", check_crossover_limits},
      {"mc-lab/crossover-scan", check_crossover_scan},
      {"cli-experiments/determinism", check_determinism}};

  std::vector<CriterionResult> results;
  for (const auto& [name, c] : checks) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c(seed, workers);
    } catch (const std::exception& e) {
      r.name = name;
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s %s: %s [%.1fs]", r.pass ? "PASS" : "FAIL", r.name.c_str(),
             r.detail.c_str(), r.seconds);
}

}  // namespace bandpoly
