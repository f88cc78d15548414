#pragma once

#include <stdexcept>
#include <string>

namespace percolata {

/// Bad arguments: arity mismatches, out-of-range parameters, insufficient
/// window margins.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured budget (vertex count, oracle edge cap, enumeration budget)
/// was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hard invariant failed. This is a bug, never a data problem.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computation finished but produced no usable answer (e.g. every
/// enumerated cutset was censored by the window boundary).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace percolata
