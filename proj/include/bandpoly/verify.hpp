#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace bandpoly {

/// Outcome of one acceptance check.
struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance checks whose names contain `filter` (all when empty).
/// Names are module-prefixed (e.g. "gaussian-spectral/kernel-spectrum") so a
/// module name selects all of its checks.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "",
                                            std::uint64_t seed = 1,
                                            int workers = 0);

/// Formats one result as a single "PASS name: detail" line.
std::string format_result(const CriterionResult& r);

}  // namespace bandpoly
