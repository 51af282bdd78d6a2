#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mktcx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that is well-formed but on which a measure is undefined
/// (zero variance, zero area, too few points, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace mktcx
