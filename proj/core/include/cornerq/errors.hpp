#pragma once

#include <stdexcept>
#include <string>

namespace cornerq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point or argument outside the domain an operation is defined on.
struct DomainError : Error {
  using Error::Error;
};

/// Boundary data that violates a corner compatibility constraint.
struct ConstraintViolation : Error {
  ConstraintViolation(const std::string& what, double m_value, double n_value)
      : Error(what), measured_m(m_value), measured_n(n_value) {}
  double measured_m;
  double measured_n;
};

/// A quadrature or series evaluation produced a non-finite value.
struct NumericError : Error {
  using Error::Error;
};

/// A file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos) : Error(what), position(pos) {}
  std::size_t position;
};

}  // namespace cornerq
