#pragma once

// Numerical checklist of the structural results the library encodes. Each
// group exercises one statement on random and constructed instances and
// reports the worst residual against its threshold.

#include <cstdint>
#include <string>
#include <vector>

namespace uniprobe {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double threshold = 0.0;
  /// Measured and reported but not part of the pass/fail verdict.
  bool advisory = false;
  std::string detail;
};

/// Group names in run order: linalg, hull, solver, pair-equivalence,
/// invariance, nme, qubit, ttrio, vfamily, wfamily.
const std::vector<std::string>& check_groups();

/// Runs the named groups (all when `only` is empty). Throws InvalidArgument
/// for an unknown group name. Results come back in group order.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only = {},
                                    std::uint64_t seed = 1, int threads = 0);

/// True iff every non-advisory result passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace uniprobe
