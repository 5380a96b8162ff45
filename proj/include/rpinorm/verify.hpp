#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rpinorm/profiles.hpp"

namespace rpinorm {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// Largest observed violation margin (0 when every case held with slack).
  double worst = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool all_passed() const;
};

/// Runs the library's invariant suites against `f` paired with `partners`
/// seeded random functions. Checks that need compact support or a nonzero
/// function are skipped (reported with zero cases) when `f` lacks them.
VerifyReport run_invariant_suite(const PiecewiseLinearFunction& f, std::uint64_t seed,
                                 std::size_t partners = 24);

} // namespace rpinorm
