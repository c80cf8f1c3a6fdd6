#pragma once

#include <stdexcept>
#include <string>

namespace lowreg {

/// Bad arguments, malformed configuration, violated preconditions.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values or runaway growth during a computation.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public NumericalError {
public:
  DivergenceError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed field or config file. Carries the 1-based line number when known.
class ParseError : public IoError {
public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace lowreg
