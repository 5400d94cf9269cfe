#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace tvgl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, invalid parameters, mismatched shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `row()` is 1-based, 0 when no row applies.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t row)
      : InputError(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Non-finite values, failed decompositions, runaway iterations.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of a function (e.g. log det of a non-SPD matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace tvgl
