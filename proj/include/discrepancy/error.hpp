#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace disc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : InvalidArgument("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                        std::to_string(got)) {}
};

/// The requested computation would exceed the caller-supplied work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NumericFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace disc
