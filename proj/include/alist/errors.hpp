#pragma once

#include <stdexcept>
#include <string>

namespace alist {

/// Raised when a value violates a domain invariant (e.g. |q_n| >= 1).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed arguments (bad grid sizes, mismatched grids, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solve stopped at its iteration cap.
class ConvergenceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace alist
