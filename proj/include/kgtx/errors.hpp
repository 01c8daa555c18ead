#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgtx {

/// Invalid configuration or parameters. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A numerical procedure failed (instability, non-convergence, overflow).
/// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Sampling window does not contain the support (plus light cone) of a profile.
class WindowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace kgtx
