#pragma once

#include <stdexcept>
#include <string>

namespace circreg {

/// Operands live in polynomial rings with different variable counts.
class dimension_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the documented domain of an operation.
class argument_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A desk-scale guard was exceeded (vertex count, lattice size, ...).
class capacity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal self-check failed; this signals a bug, not bad input.
class verification_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace circreg
