#pragma once

#include <stdexcept>
#include <string>

namespace groupcut {

/// Malformed or out-of-contract input (bad file, parameter out of range,
/// precondition such as "must be minimal" not met).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem too large for the dense/exact machinery.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace groupcut
