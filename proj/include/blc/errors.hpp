#pragma once

#include <stdexcept>
#include <string>

namespace blc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (bad table, non-normal
/// subgroup, wrong exponent, dimension mismatch, malformed file, ...).
/// The message carries the witness when one exists.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size or work budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Exact comparison could not separate two values before the precision cap.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

/// A floating point computation produced a non-finite intermediate.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace blc
