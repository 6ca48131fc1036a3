#pragma once

#include <stdexcept>
#include <string>

namespace contam {

// Bad user input (malformed records, missing files, parameter misuse).
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  InputError(std::string message, std::string file = "", long line = 0)
      : std::runtime_error(message), file_(std::move(file)), line_(line) {}
  const std::string& file() const { return file_; }
  long line() const { return line_; }

 private:
  std::string file_;
  long line_;
};

// A violated internal invariant. The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& message)
      : std::logic_error(message) {}
};

}  // namespace contam
