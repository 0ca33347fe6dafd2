#pragma once

#include <stdexcept>
#include <string>

namespace hudsal {

/// Rejected input: bad dimensions, out-of-bounds regions, malformed parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File system or codec failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hudsal
