#pragma once

#include <stdexcept>
#include <string>

namespace gact {

// Precondition or construction failure (degree mismatch, cap exceeded, ...).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file is malformed or fails schema validation.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace gact
