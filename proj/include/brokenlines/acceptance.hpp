#pragma once

// The acceptance criteria as runnable checks. Each criterion reports pass or
// fail, its wall time against a pinned limit, and a short detail string.

#include <string>
#include <vector>

#include "brokenlines/config.hpp"
#include "brokenlines/json_io.hpp"

namespace bl::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
  bool pass() const { return checks_passed && seconds < limit_seconds; }
};

/// 1 .. 9.
std::vector<int> criterion_ids();
/// Throws std::invalid_argument for an unknown id.
CriterionResult run_criterion(int id, const RunConfig& cfg);
/// All criteria when `ids` is empty.
std::vector<CriterionResult> run_all(const RunConfig& cfg, const std::vector<int>& ids = {});

/// "[PASS] 3 fiber-product covering (1.23 s / 30 s): detail".
std::string format_line(const CriterionResult& r);
/// Timing is left out so that reports stay byte-identical across runs.
io::Json to_json(const CriterionResult& r);

}  // namespace bl::acceptance
