// One PASS/FAIL line per acceptance criterion on stdout; sub-check margins on stderr.
// Optional arguments restrict the run to the listed criterion ids.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/criteria.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= kjell::kCriterionCount; ++i) ids.push_back(i);
  int failed = 0;
  for (int id : ids) {
    const auto r = kjell::run_criterion(id, ".");
    kjell::write_check_summary(std::cerr, r.checks);
    std::cout << kjell::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
