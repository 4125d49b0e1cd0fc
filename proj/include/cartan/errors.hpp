#ifndef CARTAN_ERRORS_HPP
#define CARTAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cartan {

/// Bad index, dimension mismatch or otherwise unusable argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric invariant failed; carries the offending residual.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Bracket of two basis elements escapes their span.
class NotClosedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An operation was called outside its domain (e.g. fingerprint of a non-Lie table).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cartan

#endif  // CARTAN_ERRORS_HPP
