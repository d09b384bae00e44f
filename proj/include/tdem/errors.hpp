#pragma once

#include <stdexcept>
#include <string>

namespace tdem {

// Precondition violations throw std::invalid_argument. The three types below
// map onto the CLI exit codes (2, 3, 4).

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace tdem
