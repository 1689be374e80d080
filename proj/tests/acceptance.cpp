// Runs the full verification suite and prints one PASS/FAIL line per
// acceptance criterion. Stretch checks are listed below their criterion
// but never change its status.

#include <cstdio>
#include <map>
#include <string>

#include "luinv/verify.hpp"

namespace {

constexpr double kTableBudgetMs = 60'000;
constexpr double kNumericBudgetMs = 30'000;

const std::map<int, std::string> kTitles = {
    {1, "boson stable dimensions"},
    {2, "fermion stable dimensions"},
    {3, "free generator counts"},
    {4, "mixed-state tables"},
    {5, "hook sequences"},
    {6, "graph enumeration"},
    {7, "coset signs and saturation"},
    {8, "exact oracle equivalences"},
    {9, "numeric suite"},
    {10, "determinism"},
};

}  // namespace

int main() {
  const auto report = luinv::run_verify({luinv::VerifyLevel::full, 0});

  // independent determinism probe on top of the suite's own check
  const auto q1 = luinv::run_verify({luinv::VerifyLevel::quick, 1}).to_json(false).dump();
  const auto q2 = luinv::run_verify({luinv::VerifyLevel::quick, 3}).to_json(false).dump();

  bool all = true;
  for (const auto& [criterion, title] : kTitles) {
    bool ok = true;
    int gating = 0;
    double table_ms = 0;
    std::string why;
    for (const auto& c : report.checks) {
      if (c.criterion != criterion || !c.gating) continue;
      ++gating;
      if (!c.passed) {
        ok = false;
        why += " [" + c.name + ": " + c.detail + "]";
      }
      if (criterion == 1) table_ms += c.runtime_ms;
      if (criterion == 9 && c.runtime_ms >= kNumericBudgetMs) {
        ok = false;
        why += " [" + c.name + " took " + std::to_string(c.runtime_ms / 1000) + " s]";
      }
    }
    if (criterion == 1 && table_ms >= kTableBudgetMs) {
      ok = false;
      why += " [tables took " + std::to_string(table_ms / 1000) + " s]";
    }
    if (criterion == 10 && q1 != q2) {
      ok = false;
      why += " [quick reports at 1 and 3 workers differ]";
    }
    if (gating == 0) {
      ok = false;
      why += " [no checks ran]";
    }
    all = all && ok;
    std::printf("%s criterion %d: %s (%d checks)%s\n", ok ? "PASS" : "FAIL", criterion, title.c_str(), gating,
                why.c_str());
    for (const auto& c : report.checks)
      if (c.criterion == criterion && !c.gating)
        std::printf("    stretch %s: %s %s\n", c.name.c_str(), c.passed ? "met" : "missed", c.detail.c_str());
  }
  return all ? 0 : 1;
}
