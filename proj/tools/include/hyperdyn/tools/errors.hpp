#pragma once

#include <stdexcept>

namespace hyperdyn::tools {

/// Bad invocation: malformed arguments, missing files, unusable inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperdyn::tools
