#pragma once

#include <string>
#include <utility>
#include <vector>

namespace geocalc {

enum class CheckStatus { Pass, Fail, DiscrepancyNoted };

const char* status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double max_residual = 0.0;
  std::string note;
  /// Computed artifacts rendered as text ("omega^2_1" -> "(cot(t)) θ2", ...);
  /// coordinate-frame renderings carry a "[dx]" suffix in the key.
  std::vector<std::pair<std::string, std::string>> artifacts;
};

struct Report {
  std::string subject;
  std::string version = "1.0.0";
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void sort_by_name();
  bool passed() const;  // no Fail entries (discrepancy-noted is not a failure)
  const CheckResult* find(const std::string& name) const;

  std::string to_text() const;
  std::string to_json() const;  // stable field names, deterministic order
};

}  // namespace geocalc
