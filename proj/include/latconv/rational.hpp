#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

#include "latconv/errors.hpp"

namespace latconv {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar.  Always stored in lowest terms with a positive
/// denominator; equality is value equality.  Rendering is canonical
/// ("num/den", integers as "k/1") so that reports serialize byte-identically.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int v) : v_(v) {}
  Rational(long long v) : v_(v) {}
  Rational(const BigInt& v) : v_(v) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = Big(num) / Big(den);
  }

  /// Parses "a" or "a/b" (optional leading '-').  Whitespace is not consumed.
  static Rational parse(std::string_view s);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  std::string str() const;

  Rational operator-() const { return Rational(Big(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw Error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  using Big = boost::multiprecision::cpp_rational;
  explicit Rational(Big v) : v_(std::move(v)) {}
  Big v_;
};

Rational abs(const Rational& a);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// a^k for integer k; k < 0 inverts (zero base then raises Error).
Rational pow(const Rational& a, int k);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace latconv
