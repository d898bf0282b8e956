#pragma once

#include <stdexcept>
#include <string>

namespace zagreb {

/// A parameter lies outside the domain of the operation (m > m0, n below
/// the model's initial time, too few samples, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sampling from a distribution with no mass.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Standardized third moment requested where the variance is zero.
class UndefinedSkewnessError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The oracle refuses enumerations whose history count exceeds its budget.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, std::string history_count)
      : std::runtime_error(what), history_count_(std::move(history_count)) {}

  const std::string& history_count() const noexcept { return history_count_; }

 private:
  std::string history_count_;
};

}  // namespace zagreb
