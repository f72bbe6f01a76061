#pragma once

#include <stdexcept>
#include <string>

namespace cfa {

// Malformed or out-of-contract input. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A postcondition or internal consistency check failed. The CLI maps this to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cfa
