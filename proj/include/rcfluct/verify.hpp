#pragma once

// The acceptance suite: the gates this artifact must pass, each reported as
// one pass/fail result. Statistical gates are seeded, calibrated to fail with
// probability below 1% when everything is correct, and get one automatic
// reseeded retry which is recorded in the result.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rcfluct {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool retried = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260823;
  std::vector<int> only;  // empty runs everything
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rcfluct
