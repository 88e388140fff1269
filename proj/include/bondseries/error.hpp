#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bondseries {

/// Raised when a numerical procedure breaks down (zero pivot, NaN, overflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation would produce a GenPoly above the term limit.
class TermLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Model configuration problem. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bondseries
