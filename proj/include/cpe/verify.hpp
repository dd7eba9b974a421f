#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpe {

struct CriterionResult {
  int id = 0;
  std::string label;
  bool pass = false;
  std::string detail;  // measured numbers and the tolerance they met
};

// Run the library's end-to-end cross checks. Each criterion validates one
// analytic identity or statistical prediction through two independent
// computational routes; tolerances are fixed here, not configurable.
std::vector<CriterionResult> acceptance_results();

// Print one line per criterion to os; returns true iff all pass.
bool run_acceptance(std::ostream& os);

}  // namespace cpe
