#pragma once

#include <stdexcept>
#include <string>

namespace sine {

/// Malformed caller input: dimension mismatch, bad parameter, unparsable file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure that is not the caller's fault (factorization loss, inner-solve stall).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sine
