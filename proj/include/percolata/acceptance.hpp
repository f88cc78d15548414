#pragma once

#include <string>
#include <vector>

namespace percolata {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance criteria (all ten when `only` is empty, otherwise the
/// listed ids). Each criterion is self-contained and deterministic.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

}  // namespace percolata
