#pragma once

#include <stdexcept>

namespace densemble {

// Invalid configuration or arguments supplied by the caller (CLI exit code 2).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An estimator or metric could not be computed from the given data
// (CLI exit code 3).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace densemble
