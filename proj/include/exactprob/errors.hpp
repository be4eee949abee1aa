#pragma once

#include <stdexcept>
#include <string>

namespace exactprob {

/// Base class for every error this library raises.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Values from different outcome spaces were combined.
class SpaceMismatchError : public Error {
public:
  using Error::Error;
};

/// A constructed value violates its invariants (bad prior, bad partition,
/// malformed tree, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Conditioning on an event of probability zero; the quotient is undefined.
class NullConditionError : public Error {
public:
  using Error::Error;
};

/// Division by zero in exact arithmetic.
class DivisionByZeroError : public Error {
public:
  using Error::Error;
};

}  // namespace exactprob
