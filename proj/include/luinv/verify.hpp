#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace luinv {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  unsigned workers = 0;
};

struct CheckResult {
  std::string name;
  int criterion = 0;    // acceptance criterion number
  bool gating = true;   // stretch checks are reported but do not fail the run
  bool passed = false;
  std::string detail;
  double runtime_ms = 0;
};

struct VerifyReport {
  std::string level;
  std::vector<CheckResult> checks;

  /// True iff every gating check passed.
  bool passed() const;
  /// Checks appear in execution order. runtime_ms is the only
  /// nondeterministic field; with_timing = false omits it.
  nlohmann::json to_json(bool with_timing = true) const;
};

/// quick: the boson and fermion dimension tables for l <= 3, m <= 4.
/// full: every acceptance criterion, including a determinism check that
/// reruns the quick level with different worker counts.
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace luinv
