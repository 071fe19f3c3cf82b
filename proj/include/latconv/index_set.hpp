#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latconv/budget.hpp"
#include "latconv/errors.hpp"

namespace latconv {

namespace detail {
struct SetNode;
}

/// floor(x^(1/e)) for x >= 0, e >= 2, by integer Newton iteration.  The result
/// r is certified by r^e <= x < (r+1)^e before returning; no floating point.
long long integer_root(long long x, int e);

/// Count result for a half-open window (lo, hi] of indices.
struct WindowCount {
  long long lo, hi, count;
};

/// Algebraic set of positive integers.  Immutable value type; Boolean
/// structure is kept as a tree (depth capped at 32).  Membership is decidable
/// everywhere; window counting uses closed forms for the base families and
/// their simple compositions, falling back to budgeted iteration.
class IndexSet {
 public:
  enum class Kind { All, Empty, Finite, AP, PowerImage, Complement, Union, Intersection };

  static constexpr std::size_t kMaxFiniteElems = 100'000;
  static constexpr int kMaxDepth = 32;

  static IndexSet all();
  static IndexSet empty();
  /// Explicit element list; sorted and deduplicated, elements >= 1.
  static IndexSet finite(std::vector<long long> elems);
  /// {k >= 1 : k = residue mod modulus}; modulus >= 1, 0 <= residue < modulus.
  static IndexSet ap(long long modulus, long long residue);
  /// {j^exponent : j >= 1}; exponent in [2, 62].
  static IndexSet power(int exponent);
  static IndexSet complement(IndexSet s);
  static IndexSet set_union(IndexSet a, IndexSet b);
  static IndexSet set_intersection(IndexSet a, IndexSet b);

  Kind kind() const;
  int depth() const;
  const std::vector<long long>& elements() const;  // Finite
  long long modulus() const;                       // AP
  long long residue() const;                       // AP
  int exponent() const;                            // PowerImage
  IndexSet child(int i) const;                     // Complement: 0; Union/Intersection: 0,1

  bool contains(long long n) const;  // n >= 1

  /// Members in (lo, hi]; requires 0 <= lo <= hi.  Never wrong: exceeding the
  /// iteration budget raises BudgetExceeded instead of approximating.
  WindowCount count_window(long long lo, long long hi, Budget& budget) const;

  /// Identity-level normalization: flattens Boolean nodes, removes
  /// complement pairs and All/Empty units, merges AP conjuncts by CRT and
  /// PowerImage conjuncts by exponent lcm, filters Finite conjuncts
  /// pointwise.  Semantics-preserving; used before closed-form analysis.
  IndexSet simplified() const;

  bool operator==(const IndexSet& o) const;  // structural equality
  bool operator!=(const IndexSet& o) const { return !(*this == o); }

  std::string str() const;

  /// Eventual periodicity of the membership predicate: for PowerImage-free
  /// trees membership at k > transient depends only on k mod period.
  struct Periodicity {
    bool known;
    long long period, transient;
  };
  Periodicity periodicity() const;

 private:
  explicit IndexSet(std::shared_ptr<const detail::SetNode> node);
  std::shared_ptr<const detail::SetNode> node_;
};

/// Brute-force reference count over (lo, hi]; window width capped at 1e7.
WindowCount oracle_count(const IndexSet& s, long long lo, long long hi);

}  // namespace latconv
