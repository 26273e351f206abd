#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thop {

enum class ErrorKind {
  invalid_argument,
  parse,
  io,
  infeasible,
  limit_exceeded,
  bound_violation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry the 1-based line number of the offending input line
// (0 when the problem is not tied to a single line, e.g. a count mismatch).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::parse,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace thop
