#pragma once

#include <set>
#include <string>
#include <vector>

#include "latconv/rational.hpp"

namespace latconv {

/// Element of Q^d under the coordinatewise order.  Dimension is fixed at
/// construction (d >= 1); mixing dimensions raises DimensionMismatch.
class LatticeVector {
 public:
  explicit LatticeVector(std::vector<Rational> coords);
  static LatticeVector zero(int dim);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<Rational>& coords() const { return coords_; }

  LatticeVector operator-() const;
  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);
  friend LatticeVector operator*(const Rational& c, const LatticeVector& a);
  friend bool operator==(const LatticeVector& a, const LatticeVector& b);
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }

  std::string str() const;  // "(a/b, c/d)"

 private:
  std::vector<Rational> coords_;
};

/// How two vectors sit in the coordinatewise partial order.
/// Less/Greater are strict: every coordinate <= (>=) and at least one <, (>).
enum class OrderRelation { Equal, Less, Greater, Incomparable };

OrderRelation compare(const LatticeVector& a, const LatticeVector& b);

/// a <= b in the partial order (Equal or Less).
bool leq(const LatticeVector& a, const LatticeVector& b);

LatticeVector join(const LatticeVector& a, const LatticeVector& b);  // coordinatewise max
LatticeVector meet(const LatticeVector& a, const LatticeVector& b);  // coordinatewise min

LatticeVector positive_part(const LatticeVector& a);  // a v 0
LatticeVector negative_part(const LatticeVector& a);  // (-a) v 0
LatticeVector modulus(const LatticeVector& a);        // a v (-a)

struct VectorParts {
  LatticeVector pos, neg, abs;
};
VectorParts parts(const LatticeVector& a);

/// Coordinate-support ideal: the solid subspace of vectors vanishing outside
/// `support` (1-based coordinate indices).
class OrderIdeal {
 public:
  OrderIdeal(int dim, std::set<int> support);
  static OrderIdeal full(int dim);

  int dim() const { return dim_; }
  const std::set<int>& support() const { return support_; }
  bool contains(const LatticeVector& v) const;

  std::string str() const;  // "{1,3}/dim=5"

 private:
  int dim_;
  std::set<int> support_;
};

}  // namespace latconv
