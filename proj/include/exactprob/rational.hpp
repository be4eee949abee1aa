#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "exactprob/errors.hpp"

namespace exactprob {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; arithmetic and comparison are exact. Division by zero (and a
/// zero denominator) throw DivisionByZeroError instead of producing a value.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt num, BigInt den);

  /// Parses "p" or "p/q" with an optional leading '-' on p. The denominator,
  /// when present, must be a positive integer literal.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  /// "p/q" in lowest terms, or just "p" when the value is an integer.
  std::string str() const;

  /// Decimal approximation with `places` digits after the point, rounded
  /// half away from zero. Exact values that need more digits are rounded;
  /// the result is a presentation aid, never used in computation.
  std::string decimal(int places) const;

  double to_double() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

}  // namespace exactprob
