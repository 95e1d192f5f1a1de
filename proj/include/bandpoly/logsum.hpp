#pragma once
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>

namespace bandpoly {

/// Streaming log-domain mean: after pushing x_1..x_n, value() equals
/// log((1/n) * sum exp(x_i)) computed shift-invariantly, so the inputs can be
/// logarithms of astronomically large quantities (|det|^4-scale observables).
class LogMeanAccumulator {
 public:
  void push(double x) {
    if (count_ == 0 || x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
    ++count_;
  }

  std::size_t count() const { return count_; }

  double value() const {
    if (count_ == 0) throw std::invalid_argument("log_mean_exp: empty stream");
    return max_ + std::log(sum_ / static_cast<double>(count_));
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

inline double log_mean_exp(std::span<const double> xs) {
  LogMeanAccumulator acc;
  for (double x : xs) acc.push(x);
  return acc.value();
}

}  // namespace bandpoly
