#pragma once

#include <stdexcept>
#include <string>

namespace ristl {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formula text errors, annotated with a character position.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

/// Scenario/config file errors, annotated with a line number.
struct ConfigError : Error {
  ConfigError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  explicit ConfigError(const std::string& msg) : Error(msg), line(0) {}
  std::size_t line;
};

}  // namespace ristl
