#include "latconv/rational.hpp"

#include <ostream>

namespace latconv {

Rational Rational::parse(std::string_view s) {
  auto bad = [&] { return Error("bad rational literal: '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view t) {
    if (t.empty() || (t.size() == 1 && (t[0] == '-' || t[0] == '+'))) throw bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw bad();
    return BigInt(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  BigInt num = parse_int(s.substr(0, slash));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error("rational literal with zero denominator: '" + std::string(s) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  return numerator().str() + "/" + denominator().str();
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

Rational pow(const Rational& a, int k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (a.is_zero()) throw Error("zero raised to a negative power");
    return Rational(1) / pow(a, -k);
  }
  Rational acc(1), base = a;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    if (e > 1) base *= base;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace latconv
