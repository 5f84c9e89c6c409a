#pragma once

#include <stdexcept>
#include <string>

namespace cherednik {

// Exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  invalid_input = 1,
  budget_exceeded = 2,
  internal_inconsistency = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::invalid_input; }
};

// Bad arguments, malformed data, violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A truncation, window, cap or search bound was too small to answer exactly.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::budget_exceeded; }
};

// A proven theorem was contradicted by a computation, or an internal check failed.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::internal_inconsistency; }
};

class ParseError : public InvalidInput {
 public:
  ParseError(int line, int column, const std::string& what)
      : InvalidInput(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cherednik
