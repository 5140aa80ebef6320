#pragma once

#include <stdexcept>
#include <string>

namespace rfree {

/// Precondition failures: bad parameters, undersized tables, inapplicable branches.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured budget (enumeration size, exact-arithmetic guard, zeta depth) would be exceeded.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagreed, or an exact quantity came out non-integral.
/// Always a bug, never a user error.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace rfree
