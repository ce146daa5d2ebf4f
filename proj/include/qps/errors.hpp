#pragma once

#include <stdexcept>

namespace qps {

// Invalid or malformed input (CLI exit code 2).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structurally valid input outside the validity regime of the requested
// operation, e.g. too many marked blocks (CLI exit code 2).
struct RegimeError : InputError {
  using InputError::InputError;
};

// A configured resource cap was exceeded (CLI exit code 3).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bracketed solver found no sign change, or a solved quantity failed its
// postcondition (CLI exit code 1).
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. In the simulators this signals a bug, not
// bad input (CLI exit code 1).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qps
