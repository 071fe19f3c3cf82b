#pragma once

#include <optional>
#include <string>

#include "latconv/index_set.hpp"
#include "latconv/rational.hpp"

namespace latconv {

/// Affine index rule n -> a*n + b with nonnegative integer coefficients.
struct IndexRule {
  long long a = 0, b = 0;

  long long operator()(long long n) const;
  std::string str() const;  // "2n+1", "n", "0", "4"

  friend bool operator==(const IndexRule& x, const IndexRule& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// Why a (p, q) candidate fails to be a deferred pair.
struct PairViolation {
  std::string condition;  // the failed condition, verbatim
  long long at_n;         // smallest violating n (0 when the failure is asymptotic)
};

/// Validated deferred pair: p_n < q_n for all n >= 1 and q_n -> infinity.
/// Both conditions are decided symbolically from the affine coefficients.
class DeferredPair {
 public:
  static DeferredPair make(IndexRule p, IndexRule q);  // throws Error on violation
  static std::optional<PairViolation> violation(const IndexRule& p, const IndexRule& q);
  static DeferredPair natural();  // p = 0, q = n

  long long p(long long n) const { return p_(n); }
  long long q(long long n) const { return q_(n); }
  long long width(long long n) const { return q_(n) - p_(n); }
  const IndexRule& p_rule() const { return p_; }
  const IndexRule& q_rule() const { return q_; }

  /// Window width q_n - p_n tends to infinity (slope strictly positive).
  bool width_grows() const { return q_.a > p_.a; }

  std::string str() const;  // "(p=0, q=n)"

  friend bool operator==(const DeferredPair& x, const DeferredPair& y) {
    return x.p_ == y.p_ && x.q_ == y.q_;
  }

 private:
  DeferredPair(IndexRule p, IndexRule q) : p_(p), q_(q) {}
  IndexRule p_, q_;
};

/// Density of an index set along the windows of a deferred pair.
///
/// `Exact` is emitted only when the set family admits a closed-form limit and
/// the window width tends to infinity (All/Empty/Finite stay exact for every
/// valid pair; their partial densities are eventually literally constant).
/// `Estimated` carries the partial density at the largest computed n together
/// with the max-min spread over the last tenth of the geometric grid.
/// `NoLimit` is produced for the decidable constant-width periodic patterns.
struct DensityResult {
  enum class Kind { Exact, Estimated, NoLimit, Inconclusive };
  Kind kind = Kind::Inconclusive;
  Rational value;       // exact limit, or partial density at `at_n`
  long long at_n = 0;   // largest n a partial density was computed at
  Rational oscillation; // Estimated: spread over the tail of the grid
  Rational cluster_lo, cluster_hi;  // NoLimit: the oscillating density values
  std::string note;

  bool exact() const { return kind == Kind::Exact; }
  bool is(Kind k) const { return kind == k; }
};

DensityResult deferred_density(const IndexSet& set, const DeferredPair& pair,
                               long long n_max = 1'000'000,
                               long long budget_units = Budget::kDefault);

/// Closed-form deferred density under a width-growing pair, when the algebra
/// admits one (base families, complements, and the absorbing compositions).
std::optional<Rational> exact_width_density(const IndexSet& simplified_set);

/// Natural density delta(K) along windows (0, n].  Deliberately a separate
/// code path from deferred_density (its own closed forms and its own counting
/// loop) so the two can be checked against each other.
DensityResult natural_density(const IndexSet& set, long long n_max = 1'000'000,
                              long long budget_units = Budget::kDefault);

/// Boundedness of p_n / (q_n - p_n), with the exact supremum when bounded.
struct RatioBound {
  bool bounded = false;
  Rational supremum;  // meaningful only when bounded
};

RatioBound ratio_bounded(const DeferredPair& pair);

/// How an affine gap sequence behaves.
enum class GapGrowth { Zero, Bounded, Growing };

/// Nesting report for windows of `inner` inside windows of `outer`:
/// p <= p' and q' <= q for all n, gap growth classes, and the exact limit of
/// the width ratio when the inner width has positive slope.
struct RefinementReport {
  bool nested = false;
  std::string condition;  // failed condition when !nested
  long long at_n = 0;     // smallest violating n when !nested
  GapGrowth p_gap = GapGrowth::Zero;
  GapGrowth q_gap = GapGrowth::Zero;
  std::optional<Rational> width_ratio;  // lim (q_n - p_n) / (q'_n - p'_n)
};

RefinementReport refinement_check(const DeferredPair& inner, const DeferredPair& outer);

}  // namespace latconv
