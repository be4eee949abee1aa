#include "exactprob/rational.hpp"

#include <cctype>
#include <ostream>

namespace exactprob {

namespace {

BigInt pow10(int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (den_ == 0) throw DivisionByZeroError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw ValidationError("invalid rational literal '" + std::string(text) + "'"); };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](BigInt& out) {
    std::size_t start = i;
    out = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out = out * 10 + (text[i] - '0');
      ++i;
    }
    return i > start;
  };
  BigInt num;
  if (!digits(num)) fail();
  BigInt den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (!digits(den)) fail();
    if (den == 0) throw DivisionByZeroError("rational literal '" + std::string(text) + "' has zero denominator");
  }
  if (i != text.size()) fail();
  if (neg) num = -num;
  return Rational(std::move(num), std::move(den));
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

std::string Rational::decimal(int places) const {
  if (places < 0) places = 0;
  BigInt n = boost::multiprecision::abs(num_);
  // round(|p|/q * 10^places), half away from zero
  BigInt scaled = (n * pow10(places) * 2 + den_) / (den_ * 2);
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, places + 1 - digits.size(), '0');
  std::string out;
  if (num_ < 0 && scaled != 0) out += '-';
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

double Rational::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw DivisionByZeroError("division of " + str() + " by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace exactprob
