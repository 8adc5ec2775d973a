#pragma once

#include <stdexcept>
#include <string>

namespace chainseq {

// Two scalars from different numeric backends met in one operation.
// Values are never coerced across backends.
struct BackendMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Exact-mode guard: a denominator outgrew the configured bit budget.
struct DenominatorOverflow : std::runtime_error {
  DenominatorOverflow(std::size_t bits, std::size_t budget)
      : std::runtime_error("exact denominator reached " + std::to_string(bits) +
                           " bits, budget is " + std::to_string(budget)),
        bits(bits),
        budget(budget) {}
  std::size_t bits;
  std::size_t budget;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// The sequence does not have the (-1)^n sign pattern around 1/4, so no
// nonnegative epsilon_n with 4 a_n = 1 + (-1)^n epsilon_n exists.
struct NotEpsilonForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weight c_n became nonpositive while chasing the ratio recurrence.
struct DegenerateC : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation needed a parameter run that was refuted before its horizon.
struct RefutedRun : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A two-periodic configuration violates its feasibility inequalities.
struct FeasibilityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chainseq
