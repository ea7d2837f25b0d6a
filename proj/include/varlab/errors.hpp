#pragma once

#include <stdexcept>
#include <string>

namespace varlab {

/// Rejected input: a violated precondition on user-supplied data or parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input exceeds one of the exact-computation size guards.
class SizeLimitError : public InputError {
public:
    using InputError::InputError;
};

/// An internal invariant that must never fail did fail (e.g. a theorem
/// consistency check came back false).
class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace varlab
