// SPDX-License-Identifier: MIT
// Exception hierarchy shared by every module of the library.

#pragma once

#include <stdexcept>
#include <string>

namespace modlag {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Objects from different contexts were combined, or a parameter name is
// unknown to the active context.
struct ContextError : Error {
    using Error::Error;
};

// Text could not be parsed; the message carries the byte offset.
struct ParseError : Error {
    using Error::Error;
};

// A derivative-order cap was exceeded (jet order or potential derivative).
struct OrderError : Error {
    using Error::Error;
};

// Ill-posed algebra: division by zero or by a non-scalar expression,
// a singular leading matrix in a linear solve, and the like.
struct AlgebraError : Error {
    using Error::Error;
};

// A substitution target or replacement was incompatible with the expression.
struct SubstError : Error {
    using Error::Error;
};

// Series truncation bookkeeping was violated (a coefficient beyond the
// reliable order was requested).
struct TruncError : Error {
    using Error::Error;
};

// Numeric failure: fixed-point divergence, step breakdown, invalid binding.
struct NumericError : Error {
    using Error::Error;
};

// Malformed input files or unwritable outputs.
struct IoError : Error {
    using Error::Error;
};

} // namespace modlag
