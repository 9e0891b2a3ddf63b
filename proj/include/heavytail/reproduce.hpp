#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heavytail::reproduce {

struct CheckResult {
  std::string name;
  std::string claim;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 0;
  std::size_t n = 100000;
  double confidence = 0.99;
};

/// Runs the toolkit's built-in battery of reference experiments: closed-form
/// identities, sampler/CDF agreement, pooling dominance and equality cases,
/// stable mixture laws, deadly-risk arithmetic, class membership table,
/// quantile bounds, the stop-loss comparison and the conjecture scans.
std::vector<CheckResult> run_battery(const Options& opts);

/// Pretty pass/fail table; returns the number of failures.
int print_results(const std::vector<CheckResult>& results);

}  // namespace heavytail::reproduce
