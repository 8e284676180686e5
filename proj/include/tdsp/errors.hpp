#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value outside the domain of an operation, e.g. evaluating at t < 0.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed data: discontinuous functions, broken decompositions,
// violated reduction assumptions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition (terminal removal, wrong degree).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exponential oracles refuse instances above their size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tdsp
