#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latconv/rational.hpp"

namespace latconv {

/// Polynomial over the rationals in one variable, coefficient vector trimmed
/// of trailing zeros.  Also keeps an integer-scaled copy so that evaluation
/// at integer points is a single big-integer Horner pass.
class Poly {
 public:
  Poly() = default;  // zero polynomial
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly variable();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int i) const;
  const Rational& leading() const;  // requires nonzero
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational eval(const Rational& x) const;
  Rational eval_at(long long n) const;

  Poly derivative() const;
  Poly scaled(const Rational& c) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Quotient and remainder over Q; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic gcd by Euclid's algorithm; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b);

  /// Cauchy bound B >= 1: every real root r satisfies |r| <= B.  Nonzero only.
  BigInt root_bound() const;

  /// All integer roots >= 1.  nullopt when certifying them would need a scan
  /// beyond `scan_cap` candidate divisors (never a wrong answer).
  std::optional<std::vector<long long>> integer_roots_geq1(long long scan_cap = 1'000'000) const;

  std::string str(const std::string& var = "n") const;

 private:
  void rebuild_scaled();
  std::vector<Rational> coeffs_;
  std::vector<BigInt> int_coeffs_;  // coeffs_ * scale_
  BigInt scale_ = 1;
};

/// Sign of an expression's values on an integer tail.
struct EventualSign {
  bool known = false;
  int sign = 0;         // -1, 0, +1; 0 means identically zero
  long long from_n = 1; // certified for all n >= from_n
};

/// Ratio of polynomials, reduced by the monic gcd with a monic denominator —
/// a canonical form, so structural equality is value equality.
class RationalFn {
 public:
  RationalFn();  // zero
  static RationalFn make(Poly num, Poly den);  // den nonzero
  static RationalFn constant(const Rational& c);
  static RationalFn variable();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// Value at integer n; the denominator must not vanish there (term
  /// expressions certify that at construction).
  Rational eval_at(long long n) const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);  // b nonzero
  RationalFn pow(int k) const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

  struct Limit {
    enum class Kind { Finite, PlusInfinity, MinusInfinity };
    Kind kind;
    Rational value;  // when Finite
  };
  Limit limit_at_infinity() const;

  /// Sign of f(n) for all n past the real roots of numerator and denominator.
  EventualSign eventual_sign() const;

  /// Numerator of the derivative: num' * den - num * den'.
  Poly derivative_numerator() const;

  std::string str() const;

 private:
  Poly num_, den_;
};

}  // namespace latconv
