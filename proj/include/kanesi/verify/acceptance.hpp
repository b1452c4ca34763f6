#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kanesi::acceptance {

inline constexpr int kCriterionCount = 13;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;               // one line: measured vs expected
  std::vector<std::string> details;  // optional extra lines (analysis, model notes)
};

/// Evaluate one criterion (1..13). Never throws for numerical failures;
/// those are reported as a failed result.
CriterionResult run_criterion(int id);

/// All criteria in order, or just `only`.
std::vector<CriterionResult> run_all(std::optional<int> only = std::nullopt);

/// "[PASS]  3  title: summary" followed by indented details.
std::string format_result(const CriterionResult& r);

}  // namespace kanesi::acceptance
