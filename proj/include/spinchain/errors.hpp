// errors.hpp — error categories used across the library and mapped to CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace spinchain {

// Invalid or inconsistent run parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical routine could not reach its accuracy target (CLI exit code 3).
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem input/output failure (CLI exit code 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spinchain
