#pragma once

#include <stdexcept>

namespace speclink {

/// Invalid configuration or arguments (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unusable or inconsistent input data (CLI exit code 3).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure inside a numerical routine (CLI exit code 4).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace speclink
