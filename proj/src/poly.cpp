#include "latconv/poly.hpp"

#include <algorithm>

#include "latconv/errors.hpp"

namespace latconv {

namespace {

BigInt big_lcm(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

// Rational coefficient rendered compactly: "3" instead of "3/1".
std::string compact(const Rational& r) {
  if (r.is_integer()) return r.numerator().str();
  return r.str();
}

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  rebuild_scaled();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::variable() { return Poly({Rational(0), Rational(1)}); }

void Poly::rebuild_scaled() {
  scale_ = 1;
  for (const auto& c : coeffs_) scale_ = big_lcm(scale_, c.denominator());
  int_coeffs_.clear();
  int_coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_)
    int_coeffs_.push_back(c.numerator() * (scale_ / c.denominator()));
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<size_t>(i)];
}

const Rational& Poly::leading() const {
  if (is_zero()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Poly::eval_at(long long n) const {
  if (int_coeffs_.empty()) return Rational(0);
  BigInt bn(n), acc(0);
  for (auto it = int_coeffs_.rbegin(); it != int_coeffs_.rend(); ++it) acc = acc * bn + *it;
  return Rational(acc, scale_);
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rational> out;
  out.reserve(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Rational(static_cast<long long>(i)));
  return Poly(std::move(out));
}

Poly Poly::scaled(const Rational& c) const {
  std::vector<Rational> out(coeffs_);
  for (auto& x : out) x = x * c;
  return Poly(std::move(out));
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = out[i] + a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] = out[i] + b.coeffs_[i];
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs_);
  int db = b.degree();
  int dq = static_cast<int>(rem.size()) - 1 - db;
  if (dq < 0) return {Poly(), a};
  std::vector<Rational> quot(static_cast<size_t>(dq) + 1, Rational(0));
  const Rational& lb = b.leading();
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    size_t ui = static_cast<size_t>(i);
    if (rem[ui].is_zero()) continue;
    Rational f = rem[ui] / lb;
    quot[static_cast<size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(i - db + j)] =
          rem[static_cast<size_t>(i - db + j)] - f * b.coeffs_[static_cast<size_t>(j)];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.leading());  // monic
}

BigInt Poly::root_bound() const {
  if (is_zero()) throw Error("root bound of the zero polynomial");
  BigInt lead = boost::multiprecision::abs(int_coeffs_.back());
  BigInt best = 0;
  for (size_t i = 0; i + 1 < int_coeffs_.size(); ++i) {
    BigInt q = (boost::multiprecision::abs(int_coeffs_[i]) + lead - 1) / lead;
    if (q > best) best = q;
  }
  return best + 1;
}

std::optional<std::vector<long long>> Poly::integer_roots_geq1(long long scan_cap) const {
  if (is_zero()) throw Error("integer roots of the zero polynomial");
  // Work on the integer-scaled coefficients; strip the root at zero.
  std::vector<BigInt> c(int_coeffs_);
  size_t lo = 0;
  while (lo < c.size() && c[lo] == 0) ++lo;
  c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  if (c.size() <= 1) return std::vector<long long>{};  // constant: no roots >= 1

  // Shift certificate: if P(m + 1) has all coefficients of one strict sign,
  // P has no roots >= 1 and no scan is needed.
  if (c.size() <= 400) {
    std::vector<BigInt> s(c.size(), 0);  // s[j] = sum_i c[i] * C(i, j)
    for (size_t i = 0; i < c.size(); ++i) {
      BigInt binom = 1;  // C(i, 0)
      for (size_t j = 0; j <= i; ++j) {
        s[j] += c[i] * binom;
        binom = binom * (BigInt(i) - BigInt(j)) / (BigInt(j) + 1);  // C(i, j+1)
      }
    }
    bool all_nonneg = true, all_nonpos = true;
    for (const auto& v : s) {
      if (v < 0) all_nonneg = false;
      if (v > 0) all_nonpos = false;
    }
    if ((all_nonneg || all_nonpos) && s[0] != 0) return std::vector<long long>{};
  }

  BigInt bound = root_bound();
  BigInt a0 = boost::multiprecision::abs(c[0]);
  std::vector<long long> roots;
  if (bound > scan_cap) return std::nullopt;
  long long top = bound.convert_to<long long>();
  for (long long k = 1; k <= top; ++k) {
    if (a0 % k != 0) continue;  // an integer root divides the constant term
    BigInt bk(k), acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * bk + *it;
    if (acc == 0) roots.push_back(k);
  }
  return roots;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeff(i);
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    Rational mag = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = (mag == Rational(1));
    if (i == 0) {
      out += compact(mag);
    } else {
      if (!unit) out += compact(mag) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

RationalFn::RationalFn() : num_(), den_(Poly::constant(Rational(1))) {}

RationalFn RationalFn::make(Poly num, Poly den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  RationalFn f;
  if (num.is_zero()) return f;  // canonical zero: 0 / 1
  Poly g = Poly::gcd(num, den);
  if (g.degree() >= 1) {
    num = Poly::divmod(num, g).first;
    den = Poly::divmod(den, g).first;
  }
  Rational lead = den.leading();
  f.num_ = num.scaled(Rational(1) / lead);
  f.den_ = den.scaled(Rational(1) / lead);
  return f;
}

RationalFn RationalFn::constant(const Rational& c) {
  return make(Poly::constant(c), Poly::constant(Rational(1)));
}

RationalFn RationalFn::variable() {
  return make(Poly::variable(), Poly::constant(Rational(1)));
}

Rational RationalFn::eval_at(long long n) const {
  Rational d = den_.eval_at(n);
  if (d.is_zero()) throw Error("denominator vanishes at n = " + std::to_string(n));
  return num_.eval_at(n) / d;
}

RationalFn RationalFn::operator-() const { return make(-num_, den_); }

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn::make(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error("division by the zero function");
  return RationalFn::make(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn RationalFn::pow(int k) const {
  if (k < 0) {
    if (is_zero()) throw Error("negative power of the zero function");
    return RationalFn::constant(Rational(1)) / pow(-k);
  }
  RationalFn acc = RationalFn::constant(Rational(1));
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

RationalFn::Limit RationalFn::limit_at_infinity() const {
  if (num_.is_zero()) return {Limit::Kind::Finite, Rational(0)};
  int dn = num_.degree(), dd = den_.degree();
  if (dn < dd) return {Limit::Kind::Finite, Rational(0)};
  if (dn == dd) return {Limit::Kind::Finite, num_.leading()};  // den is monic
  return {num_.leading().sign() > 0 ? Limit::Kind::PlusInfinity : Limit::Kind::MinusInfinity,
          Rational(0)};
}

EventualSign RationalFn::eventual_sign() const {
  EventualSign out;
  if (num_.is_zero()) {
    out.known = true;
    out.sign = 0;
    out.from_n = 1;
    return out;
  }
  BigInt bound = num_.root_bound();
  if (den_.degree() >= 1) bound = std::max(bound, den_.root_bound());
  if (bound > 1'000'000'000) return out;  // unknown
  out.known = true;
  out.sign = num_.leading().sign();  // den is monic, hence positive past its roots
  out.from_n = bound.convert_to<long long>() + 1;
  return out;
}

Poly RationalFn::derivative_numerator() const {
  return num_.derivative() * den_ - num_ * den_.derivative();
}

std::string RationalFn::str() const {
  if (den_.degree() == 0) {
    // den == 1 by canonical form
    if (num_.degree() <= 0) return num_.is_zero() ? "0" : compact(num_.coeff(0));
    return num_.str();
  }
  std::string n = num_.degree() <= 0 ? (num_.is_zero() ? "0" : compact(num_.coeff(0))) : num_.str();
  return "(" + n + ")/(" + den_.str() + ")";
}

}  // namespace latconv
