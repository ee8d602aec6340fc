#pragma once

#include <stdexcept>
#include <string>

namespace ssrsc {

// Every failure raised by the library derives from Error. kind() is the short
// machine-readable tag printed by the CLI as "error: <kind>: <message>".
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

class ShapeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "shape"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class NumericError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric"; }
};

// An ADMM iterate stopped being finite.
class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "divergence"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row, std::size_t column)
      : Error(message + " (row " + std::to_string(row) + ", column " +
              std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  const char* kind() const noexcept override { return "parse"; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace ssrsc
