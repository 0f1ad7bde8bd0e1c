#pragma once

#include <string>
#include <vector>

#include "kjell/check.hpp"

namespace kjell {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  std::vector<CheckRecord> checks;
};

constexpr int kCriterionCount = 13;

/// Short names, index i holding criterion i + 1.
const std::vector<std::string>& criterion_names();

/// Runs criterion id in [1, 13]. Solved sets are cached across calls in one process.
/// work_dir receives the files written by the determinism criterion.
CriterionResult run_criterion(int id, const std::string& work_dir = ".");

/// "PASS|FAIL criterion <id> <name>: <detail> (<seconds> s)".
std::string format_result(const CriterionResult& r);

}  // namespace kjell
