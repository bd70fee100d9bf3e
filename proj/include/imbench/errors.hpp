#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imbench {

// Malformed input text. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Instance exceeds a configured resource cap (oracle size, RR storage).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algorithm under benchmark failed at runtime.
class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imbench
