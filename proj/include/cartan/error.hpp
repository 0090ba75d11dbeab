#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in different fields / rings / ambients.
struct MismatchError : Error {
    using Error::Error;
};

/// Mathematically invalid request (division by zero, bad axis, precondition
/// violation on an operation's domain).
struct DomainError : Error {
    using Error::Error;
};

/// An identity that holds by theory failed to hold numerically.  Seeing this
/// exception means the implementation is wrong, not the input.
struct InternalCheckError : Error {
    using Error::Error;
};

/// Malformed serialized input.
struct ParseError : Error {
    using Error::Error;
};

} // namespace cartan
