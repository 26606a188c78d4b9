#pragma once

#include <string>
#include <vector>

namespace kzknot {

enum class CheckStatus { kPass, kFail, kIndeterminate, kSkipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kSkipped;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;

  // Fail beats indeterminate beats pass; an empty or all-skipped suite is skipped.
  CheckStatus status() const;
};

// Property suites of every module at desk scale. Numeric suites are skipped
// when max_degree is 0.
std::vector<SuiteResult> run_selftest(int max_degree, double tol);

bool any_failed(const std::vector<SuiteResult>& suites);

}  // namespace kzknot
