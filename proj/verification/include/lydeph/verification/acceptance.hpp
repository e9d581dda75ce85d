#pragma once

#include <string>
#include <vector>

namespace lydeph::verification {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

inline constexpr int kCriterionCount = 14;

// Runs one acceptance criterion (1..14). Library errors are caught and
// reported as a failure with the error text.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all_criteria();

// "[PASS] 3 low-temperature zero spacing: ..." without a trailing newline.
std::string format_result(const CriterionResult& result);

}  // namespace lydeph::verification
