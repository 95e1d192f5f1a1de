// Acceptance gate: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit status is nonzero if
// any criterion fails.
#include <algorithm>
#include <cstdio>

#include "bandpoly/verify.hpp"

int main() {
  const auto results = bandpoly::run_acceptance("", 1, 0);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s\n", bandpoly::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) all_pass = false;
  }
  std::printf("%s: %zu criteria, %zu failed\n", all_pass ? "OK" : "FAILURES",
              results.size(),
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return !r.pass; })));
  return all_pass ? 0 : 1;
}
