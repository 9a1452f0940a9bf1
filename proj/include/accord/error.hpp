#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accord {

/// Input that fails syntactic or semantic validation. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document. `offset` is the byte position reported by the JSON reader.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : ValidationError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Failure while running an otherwise valid request (I/O, inconsistent state).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace accord
