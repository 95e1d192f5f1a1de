#include "bandpoly/mc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bandpoly/logsum.hpp"
#include "bandpoly/rng.hpp"

namespace bandpoly {

int resolve_workers(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("BANDPOLY_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SpectralPoint make_spectral_point(std::complex<double> z,
                                  std::complex<double> zeta, int n, double w) {
  if (n < 1) throw std::invalid_argument("spectral_point: n must be >= 1");
  if (!(w > 0.0)) throw std::invalid_argument("spectral_point: w must be > 0");
  if (!(std::abs(z) < 1.0))
    throw std::invalid_argument("spectral_point: |z| must be < 1");

  SpectralPoint p;
  p.n = n;
  p.w = w;
  p.z = z;
  p.zeta = zeta;
  const double root_n = std::sqrt(static_cast<double>(n));
  p.z1 = z + zeta / root_n;
  p.z2 = z - zeta / root_n;
  p.u_star = std::sqrt(1.0 - std::norm(z));
  p.alpha = p.u_star * std::sqrt(2.0 + p.u_star * p.u_star / (w * w));
  p.lambda_star = 1.0 - (p.alpha - p.u_star * p.u_star / w) / w;
  return p;
}

double log_abs_det2(const Eigen::MatrixXcd& m, std::complex<double> shift) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXcd shifted = m;
  shifted.diagonal().array() -= shift;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(lu.matrixLU()(i, i));
    if (a == 0.0) throw SingularSample("sample matrix singular at probe point");
    acc += std::log(a);
  }
  return 2.0 * acc;
}

namespace {

/// Fills slots [begin, end) of the table; shared by the serial and parallel
/// drivers so that both produce identical bytes.  A singular sample leaves
/// NaN in its slot; slots are compacted afterwards in index order.
void fill_range(const BandProfile& profile, const SpectralPoint& point,
                std::uint64_t seed, std::size_t begin, std::size_t end,
                LogDetTable& table) {
  for (std::size_t i = begin; i < end; ++i) {
    const Eigen::MatrixXcd h = sample_matrix(profile, seed, i);
    try {
      table.l0[i] = log_abs_det2(h, point.z);
      table.l1[i] = log_abs_det2(h, point.z1);
      table.l2[i] = log_abs_det2(h, point.z2);
    } catch (const SingularSample&) {
      table.l0[i] = table.l1[i] = table.l2[i] =
          std::numeric_limits<double>::quiet_NaN();
    }
  }
}

void compact_singular(LogDetTable& table) {
  std::size_t out = 0;
  const std::size_t n = table.l0.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(table.l0[i]) || std::isnan(table.l1[i]) ||
        std::isnan(table.l2[i])) {
      ++table.singular_count;
      continue;
    }
    table.l0[out] = table.l0[i];
    table.l1[out] = table.l1[i];
    table.l2[out] = table.l2[i];
    ++out;
  }
  table.l0.resize(out);
  table.l1.resize(out);
  table.l2.resize(out);
}

}  // namespace

LogDetTable sample_log_dets(const BandProfile& profile,
                            const SpectralPoint& point, std::size_t samples,
                            std::uint64_t seed, int workers) {
  LogDetTable table;
  table.l0.resize(samples);
  table.l1.resize(samples);
  table.l2.resize(samples);
  const int nw = resolve_workers(workers);
#ifdef _OPENMP
#pragma omp parallel num_threads(nw)
  {
    const int t = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::size_t chunk = (samples + nt - 1) / nt;
    const std::size_t begin = std::min<std::size_t>(samples, chunk * t);
    const std::size_t end = std::min<std::size_t>(samples, begin + chunk);
    fill_range(profile, point, seed, begin, end, table);
  }
#else
  (void)nw;
  fill_range(profile, point, seed, 0, samples, table);
#endif
  compact_singular(table);
  return table;
}

LogDetTable sample_log_dets_serial(const BandProfile& profile,
                                   const SpectralPoint& point,
                                   std::size_t samples, std::uint64_t seed) {
  LogDetTable table;
  table.l0.resize(samples);
  table.l1.resize(samples);
  table.l2.resize(samples);
  fill_range(profile, point, seed, 0, samples, table);
  compact_singular(table);
  return table;
}

namespace {

struct LogMeans {
  double num;    ///< log mean exp(l1 + l2)
  double d1;     ///< log mean exp(2 l1)
  double d2;     ///< log mean exp(2 l2)
  double d0;     ///< log mean exp(2 l0)
};

template <typename Index>
LogMeans reduce_means(const LogDetTable& t, const std::vector<Index>& idx) {
  LogMeanAccumulator num, d1, d2, d0;
  for (Index i : idx) {
    num.push(t.l1[i] + t.l2[i]);
    d1.push(2.0 * t.l1[i]);
    d2.push(2.0 * t.l2[i]);
    d0.push(2.0 * t.l0[i]);
  }
  return {num.value(), d1.value(), d2.value(), d0.value()};
}

double gin_of(const LogMeans& m) {
  return std::exp(m.num - 0.5 * m.d1 - 0.5 * m.d2);
}
double loc_of(const LogMeans& m) { return std::exp(m.num - m.d0); }

}  // namespace

RatioResult ratios_from_table(const LogDetTable& table, std::uint64_t seed,
                              int bootstrap_resamples) {
  const std::size_t n = table.l0.size();
  if (n == 0) throw std::invalid_argument("ratios_from_table: empty table");

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const LogMeans means = reduce_means(table, all);

  RatioResult r;
  r.samples = n;
  r.singular_count = table.singular_count;
  r.gin.value = gin_of(means);
  r.loc.value = loc_of(means);

  // Percentile bootstrap over resampled indices; resampling uses its own
  // deterministic counter stream so results do not depend on worker count.
  const int nb = std::max(bootstrap_resamples, 200);
  std::vector<double> gin_rep(nb), loc_rep(nb);
  const CounterRng rng(seed, 0x626f6f74ULL);  // dedicated bootstrap stream
  std::vector<std::size_t> idx(n);
  for (int b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t c = static_cast<std::uint64_t>(b) * n + i;
      idx[i] = static_cast<std::size_t>(rng.uniform(c) * n);
    }
    const LogMeans m = reduce_means(table, idx);
    gin_rep[b] = gin_of(m);
    loc_rep[b] = loc_of(m);
  }
  auto stddev = [nb](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= nb;
    double s2 = 0.0;
    for (double x : v) s2 += (x - mean) * (x - mean);
    return std::sqrt(s2 / (nb - 1));
  };
  r.gin.stderr_ = stddev(gin_rep);
  r.loc.stderr_ = stddev(loc_rep);
  return r;
}

RatioResult estimate_ratios(const SpectralPoint& point, std::size_t samples,
                            std::uint64_t seed, int workers,
                            int bootstrap_resamples) {
  if (samples < 100)
    throw std::invalid_argument("estimate_ratios: samples must be >= 100");
  const BandProfile profile = build_profile(point.n, point.w);
  const LogDetTable table =
      sample_log_dets(profile, point, samples, seed, workers);
  return ratios_from_table(table, seed, bootstrap_resamples);
}

double theta_wick_n1(std::complex<double> z1, std::complex<double> z2) {
  // E|x - z1|^2 |x - z2|^2 for x = g1 + i g2, E|x|^2 = 1 (Gaussian moments).
  return 2.0 + std::norm(z1) + std::norm(z2) + std::norm(z1) * std::norm(z2) +
         2.0 * std::real(std::conj(z1) * z2);
}

}  // namespace bandpoly
