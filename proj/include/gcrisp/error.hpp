#pragma once

#include <stdexcept>
#include <string>

namespace gcrisp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Well-formed input outside the supported fragment (role assertions,
// several individuals).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit (node budget, enumeration budget) was hit.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace gcrisp
