#include <iostream>

#include "quadrank/acceptance.hpp"

int main() {
  int failed = 0;
  quadrank::acceptance::run_acceptance([&](const quadrank::acceptance::CriterionResult& r) {
    if (!r.passed) ++failed;
    std::cout << quadrank::acceptance::format_result(r) << std::endl;
  });
  std::cout << (failed == 0 ? "all 13 criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
