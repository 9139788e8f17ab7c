#pragma once

#include <stdexcept>
#include <string>

namespace holant {

/// Malformed scalar, signature or grid text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain
/// (wrong arity, degenerate input, singular matrix, open grid, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact backend cannot represent the result: a second independent
/// square root, or a cyclotomic order above the configured cap.
/// Callers that can tolerate it fall back to the float backend.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holant
