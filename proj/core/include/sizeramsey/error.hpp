#pragma once

#include <stdexcept>
#include <string>

namespace sizeramsey {

// Caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact (exhaustive) procedure would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling ran out of attempts.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a real-valued formula (log of a negative, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace sizeramsey
