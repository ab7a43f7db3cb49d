#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poissym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or problem-file text. `position` is a 0-based
/// character offset into the parsed string; `line` is 1-based when the
/// text came from a file and 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::size_t line = 0)
      : Error(format(message, position, line)),
        message_(std::move(message)),
        position_(position),
        line_(line) {}

  const std::string& detail() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& msg, std::size_t pos, std::size_t line) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(pos + 1) + ": " + msg;
    return out;
  }

  std::string message_;
  std::size_t position_;
  std::size_t line_;
};

/// Inputs that parse but violate a mathematical precondition
/// (non-Poisson ideal, degenerate generator, rank mismatch, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale resource cap was exceeded (group closure, ...).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace poissym
