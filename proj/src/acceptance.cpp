#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "percolata/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto results = percolata::run_acceptance(only);
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
    std::printf("[%s] criterion %2d (%s): %s [%.1fs]\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
