#include "kjell/check.hpp"

#include <ostream>

#include "kjell/interval_set.hpp"

namespace kjell {

void write_check_summary(std::ostream& os, const std::vector<CheckRecord>& checks) {
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " margin=" << fmt(c.margin)
       << " samples=" << c.samples << " violations=" << c.violations;
    if (!c.detail.empty()) os << " | " << c.detail;
    os << "\n";
  }
}

}  // namespace kjell
