#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace minkit {

struct VerifyOptions {
  int battery_size = 20;
  std::uint64_t seed = 7;
  long budget = 20000;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed = false;
};

/// Runs the full equivalence / invariance / bound battery over seeded
/// random states plus the family grids. Deterministic for a fixed seed.
VerifyReport run_verification(const VerifyOptions& opts);

/// Fixed-format text rendering (byte-identical for identical reports).
std::string format_report(const VerifyReport& report);

}  // namespace minkit
