#include <iostream>

#include "d4plus/checks.hpp"

int main() {
  int failed = 0;
  for (const auto& r : d4::run_acceptance()) {
    std::cout << d4::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (12 - failed) << "/12 acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
