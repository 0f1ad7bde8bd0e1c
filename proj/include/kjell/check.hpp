#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kjell {

/// Outcome of one named inequality check.
///
/// margin is the smallest slack over all samples, in the units of the check;
/// a check passes exactly when margin >= 0 and nothing was rejected.
struct CheckRecord {
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string detail;
};

void write_check_summary(std::ostream& os, const std::vector<CheckRecord>& checks);

}  // namespace kjell
