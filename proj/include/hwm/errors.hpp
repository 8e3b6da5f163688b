#pragma once

#include <stdexcept>
#include <string>

namespace hwm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported evaluation range (order, argument, grid
/// extent, Nyquist limit, ...).
class RangeError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula, e.g. q = 0 in a
/// normalization constant carrying 1/sqrt(q).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure failed to converge or produced an inconsistent
/// result (eigensolver stall, non-real Rayleigh quotient, zero norm).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed file or stream content.
class FormatError : public Error {
public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace hwm
