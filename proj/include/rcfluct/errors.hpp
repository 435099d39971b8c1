#pragma once

#include <stdexcept>
#include <string>

namespace rcfluct {

/// Thrown when a brute-force enumeration would exceed its configured budget.
/// Queries fail before any work is done; no partial results are produced.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, double required, double budget)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           " tuples, budget " + std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  double required() const { return required_; }
  double budget() const { return budget_; }

 private:
  double required_;
  double budget_;
};

/// Thrown when two computation paths that must agree (e.g. the DFT trace and
/// the eigensolver trace) disagree beyond tolerance in self-check mode.
class integrity_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a numeric routine (eigensolver) reports failure.
class numeric_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rcfluct
