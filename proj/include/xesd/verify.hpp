#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xesd {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20061015;
  int random_states = 1000;
  // Multiplies the first Kraus operator in the CPTP check; 1 means no fault.
  double fault_scale = 1.0;
};

// Runs the invariant suites: completeness of every channel, X-form
// invariance, closed form vs. Kraus sum, concurrence cross-method,
// semigroup property and record invariants over the default sweeps.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

}  // namespace xesd
