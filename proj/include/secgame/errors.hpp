#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace secgame {

// Input failed one or more model invariants. All violations are collected
// so callers can report them together.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// A well-formed request that makes no sense for the given model state,
// e.g. attacking a node that is already compromised.
class DomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (syntax or schema).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Document parses but does not match what the model expects, e.g. a strategy
// file whose action lists differ from the game's.
class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace secgame
