#include "latconv/riesz.hpp"

#include <utility>

namespace latconv {

namespace {
void check_same_dim(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}
}  // namespace

LatticeVector::LatticeVector(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error("lattice vector needs dimension >= 1");
}

LatticeVector LatticeVector::zero(int dim) {
  if (dim < 1) throw Error("lattice vector needs dimension >= 1");
  return LatticeVector(std::vector<Rational>(static_cast<std::size_t>(dim)));
}

LatticeVector LatticeVector::operator-() const {
  std::vector<Rational> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(-c);
  return LatticeVector(std::move(out));
}

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  check_same_dim(a, b);
  std::vector<Rational> out;
  out.reserve(a.coords_.size());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) out.push_back(a.coords_[i] + b.coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  check_same_dim(a, b);
  std::vector<Rational> out;
  out.reserve(a.coords_.size());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) out.push_back(a.coords_[i] - b.coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector operator*(const Rational& c, const LatticeVector& a) {
  std::vector<Rational> out;
  out.reserve(a.coords_.size());
  for (const auto& x : a.coords_) out.push_back(c * x);
  return LatticeVector(std::move(out));
}

bool operator==(const LatticeVector& a, const LatticeVector& b) {
  return a.coords_ == b.coords_;
}

std::string LatticeVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].str();
  }
  return out + ")";
}

OrderRelation compare(const LatticeVector& a, const LatticeVector& b) {
  check_same_dim(a, b);
  bool all_leq = true, all_geq = true;
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) all_leq = false;
    if (a[i] < b[i]) all_geq = false;
  }
  if (all_leq && all_geq) return OrderRelation::Equal;
  if (all_leq) return OrderRelation::Less;
  if (all_geq) return OrderRelation::Greater;
  return OrderRelation::Incomparable;
}

bool leq(const LatticeVector& a, const LatticeVector& b) {
  OrderRelation r = compare(a, b);
  return r == OrderRelation::Equal || r == OrderRelation::Less;
}

LatticeVector join(const LatticeVector& a, const LatticeVector& b) {
  check_same_dim(a, b);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) out.push_back(max(a[i], b[i]));
  return LatticeVector(std::move(out));
}

LatticeVector meet(const LatticeVector& a, const LatticeVector& b) {
  check_same_dim(a, b);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) out.push_back(min(a[i], b[i]));
  return LatticeVector(std::move(out));
}

LatticeVector positive_part(const LatticeVector& a) { return join(a, LatticeVector::zero(a.dim())); }
LatticeVector negative_part(const LatticeVector& a) { return join(-a, LatticeVector::zero(a.dim())); }
LatticeVector modulus(const LatticeVector& a) { return join(a, -a); }

VectorParts parts(const LatticeVector& a) {
  return VectorParts{positive_part(a), negative_part(a), modulus(a)};
}

OrderIdeal::OrderIdeal(int dim, std::set<int> support) : dim_(dim), support_(std::move(support)) {
  if (dim_ < 1) throw Error("ideal needs dimension >= 1");
  for (int i : support_)
    if (i < 1 || i > dim_)
      throw Error("ideal support index " + std::to_string(i) + " outside 1.." + std::to_string(dim_));
}

OrderIdeal OrderIdeal::full(int dim) {
  std::set<int> s;
  for (int i = 1; i <= dim; ++i) s.insert(i);
  return OrderIdeal(dim, std::move(s));
}

bool OrderIdeal::contains(const LatticeVector& v) const {
  if (v.dim() != dim_) throw DimensionMismatch(v.dim(), dim_);
  for (int i = 1; i <= dim_; ++i)
    if (!support_.count(i) && !v[i - 1].is_zero()) return false;
  return true;
}

std::string OrderIdeal::str() const {
  std::string out = "{";
  bool first = true;
  for (int i : support_) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}/dim=" + std::to_string(dim_);
}

}  // namespace latconv
