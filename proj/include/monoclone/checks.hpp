#pragma once

#include <string>
#include <vector>

#include "monoclone/field.hpp"

namespace monoclone {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Number of instances checked, or the first counterexample.
  std::string detail;
};

/// Runs every property check that applies to q: monomial calculus against
/// real field arithmetic, the closure rewrite rules on sample clones, the
/// lattice structure results, the semi-affine image and the minor-set
/// embedding. Heavier checks only run where the universes are small
/// (see README).
std::vector<CheckResult> run_checks(const FieldParam& fp);

}  // namespace monoclone
