#pragma once

#include <stdexcept>
#include <string>

namespace nhchain {

/// Bad user input: parameter ranges, config schema, file contents.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine failed to converge or hit an ill-conditioned system.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nhchain
