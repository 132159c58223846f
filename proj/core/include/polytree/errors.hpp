#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polytree {

/// Malformed or out-of-range input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not match one of the file grammars. Line numbers are 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An algorithm's precondition does not hold for the given instance.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The request is well-formed but exceeds a size guard (exponential blowup).
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polytree
