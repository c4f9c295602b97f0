#pragma once

#include <stdexcept>
#include <string>

namespace bpsw {

/// A modulus <= 1 was passed to a modular routine.
class InvalidModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of a test (even n, n <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold, e.g. a Lucas
/// classifier called with parameters whose Jacobi symbol is not -1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Data handed between pipeline stages does not match what the callee expects
/// (a Lucas triple at the wrong subscript, for instance).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bpsw
