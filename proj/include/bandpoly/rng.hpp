#pragma once
#include <cstdint>
#include <cmath>
#include <complex>
#include <utility>

namespace bandpoly {

/// SplitMix64 finalizer: a well-mixed 64-bit permutation used as the core of
/// the counter-based random streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless counter-based random stream.  A stream is identified by a key
/// derived from (seed, stream indices); every draw is a pure function of
/// (key, counter).  Results therefore never depend on evaluation order or on
/// how work is split across threads, which is what makes multi-worker runs
/// bit-identical to serial ones.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t s0 = 0,
                      std::uint64_t s1 = 0, std::uint64_t s2 = 0)
      : key_(mix64(mix64(mix64(mix64(seed) ^ s0) + s1) ^ s2)) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
  }

  /// Uniform draw in the open interval (0,1).
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1p-53;
  }

  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair(std::uint64_t counter) const {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// g1 + i*g2 with g1,g2 independent standard normals (E|.|^2 = 2).
  std::complex<double> complex_gaussian(std::uint64_t counter) const {
    auto [g1, g2] = normal_pair(counter);
    return {g1, g2};
  }

 private:
  std::uint64_t key_;
};

/// Worker-count resolution: explicit flag, then the BANDPOLY_WORKERS
/// environment variable, then hardware parallelism.
int resolve_workers(int flag);

}  // namespace bandpoly
