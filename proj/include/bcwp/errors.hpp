#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcwp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric sample whose determinant vanishes; carries the flat grid index.
class SingularMetricError : public Error {
 public:
  SingularMetricError(const std::string& what, std::size_t index)
      : Error(what + " (grid index " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// A field required to be positive has a nonpositive (or non-finite) sample.
class NonPositiveFieldError : public Error {
 public:
  NonPositiveFieldError(const std::string& field, std::size_t index, double value)
      : Error(field + ": nonpositive sample " + std::to_string(value) + " at grid index " +
              std::to_string(index)),
        field_(field),
        index_(index) {}
  const std::string& field() const { return field_; }
  std::size_t index() const { return index_; }

 private:
  std::string field_;
  std::size_t index_;
};

/// A parameter hits a value where a formula divides by zero.
class SingularParameterError : public Error {
 public:
  using Error::Error;
};

/// Inputs whose shapes or grids do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method exhausted its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An iterate left the order interval of its sub/supersolution certificate.
class CertificateViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bcwp
