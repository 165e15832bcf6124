#pragma once

#include <stdexcept>
#include <string>

namespace iterid {

/// Malformed or out-of-contract input (bad word text, wrong arity, composite
/// modulus, ...). Maps to CLI exit code 3.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or symbolic computation would exceed its configured cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace iterid
