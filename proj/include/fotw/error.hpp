#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fotw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text that does not follow a grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input exceeds the size guard of an exponential-time procedure.
class TooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

inline bool guard_override() {
  const char* v = std::getenv("FOTW_GUARD_OVERRIDE");
  return v != nullptr && std::string(v) == "1";
}

inline void check_guard(bool within, const std::string& what) {
  if (!within && !guard_override()) {
    throw TooLarge(what + " (set FOTW_GUARD_OVERRIDE=1 to lift the guard)");
  }
}

}  // namespace fotw
