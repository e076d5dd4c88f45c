// Runs acceptance criteria 1-12 from configs/accept and prints one line per
// criterion. Exit status is the number of failing criteria.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "levi/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  try {
    for (const levi::CriterionResult& r : levi::run_acceptance(LEVI_CONFIG_DIR, ids)) {
      std::printf("%s\n", levi::format_result(r).c_str());
      std::fflush(stdout);
      if (!r.passed) ++failed;
    }
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance harness: %s\n", e.what());
    return 100;
  }
  std::printf("%d criteria failed\n", failed);
  return failed;
}
