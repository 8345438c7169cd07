#pragma once

#include <stdexcept>
#include <string>

namespace cartier {

/// Failure categories. The CLI maps each kind onto a fixed exit code.
enum class ErrorKind {
  usage,      // bad input, mismatched operands, unmet preconditions
  domain,     // mathematically undefined (inverse of zero, colon by zero)
  syntax,     // malformed polynomial or element text
  resource,   // an enumeration or iteration cap was exceeded
  invariant,  // an internal consistency check failed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error(ErrorKind::usage, detail) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& detail) : Error(ErrorKind::domain, detail) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& detail, std::size_t position)
      : Error(ErrorKind::syntax, detail + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& detail) : Error(ErrorKind::resource, detail) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& detail) : Error(ErrorKind::invariant, detail) {}
};

}  // namespace cartier
