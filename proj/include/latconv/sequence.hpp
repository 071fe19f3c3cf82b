#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latconv/budget.hpp"
#include "latconv/deferred.hpp"
#include "latconv/index_set.hpp"
#include "latconv/poly.hpp"
#include "latconv/riesz.hpp"

namespace latconv {

/// One coordinate rule built from n, rational constants, + - * / ^.  Division
/// is accepted only when the denominator provably never vanishes on n >= 1,
/// so evaluation is total on the positive integers.
class TermExpr {
 public:
  TermExpr() : fn_(RationalFn()) {}
  static TermExpr constant(const Rational& c);
  static TermExpr variable();

  Rational eval(long long n) const { return fn_.eval_at(n); }
  const RationalFn& fn() const { return fn_; }

  TermExpr operator-() const;
  friend TermExpr operator+(const TermExpr& a, const TermExpr& b);
  friend TermExpr operator-(const TermExpr& a, const TermExpr& b);
  friend TermExpr operator*(const TermExpr& a, const TermExpr& b);
  friend TermExpr operator/(const TermExpr& a, const TermExpr& b);
  TermExpr pow(int k) const;

  friend bool operator==(const TermExpr& a, const TermExpr& b) { return a.fn_ == b.fn_; }
  friend bool operator!=(const TermExpr& a, const TermExpr& b) { return !(a == b); }

  std::string str() const { return fn_.str(); }

 private:
  explicit TermExpr(RationalFn fn) : fn_(std::move(fn)) {}
  static void require_nonvanishing(const TermExpr& divisor);
  RationalFn fn_;
};

struct SeqPiece {
  IndexSet guard;
  std::vector<TermExpr> coords;
};

/// Piecewise-defined sequence n |-> x_n in Q^dim.  Pieces are tried in order
/// and the first guard containing n wins; the last guard must cover every
/// index not taken earlier, which is enforced by requiring it to be ALL.
class RuleSequence {
 public:
  RuleSequence(int dim, std::vector<SeqPiece> pieces);
  static RuleSequence constant(const LatticeVector& v);

  int dim() const { return dim_; }
  const std::vector<SeqPiece>& pieces() const { return pieces_; }

  int piece_index_at(long long n) const;
  LatticeVector eval(long long n) const;

  /// Guard of piece i minus all earlier guards, simplified: the set of
  /// indices actually routed to piece i.  The guards partition N.
  std::vector<IndexSet> effective_guards() const;

  friend bool operator==(const RuleSequence& a, const RuleSequence& b);
  friend bool operator!=(const RuleSequence& a, const RuleSequence& b) { return !(a == b); }

  std::string str() const;

 private:
  int dim_;
  std::vector<SeqPiece> pieces_;
};

/// Pointwise la * a + mu * b on the common refinement of the two piece
/// structures.
RuleSequence pointwise_linear(const Rational& la, const RuleSequence& a,
                              const Rational& mu, const RuleSequence& b);
RuleSequence pointwise_negate(const RuleSequence& a);
RuleSequence pointwise_shift(const RuleSequence& a, const LatticeVector& v);

enum class LatticeOp { Join, Meet };

/// Pointwise join or meet.  On each refined region the coordinatewise winner
/// is decided by the eventual sign of the difference; the finitely many
/// indices before that are split off into explicit finite pieces.  Throws
/// when a sign cannot be certified or the transient is impractically long.
RuleSequence pointwise_lattice(const RuleSequence& a, const RuleSequence& b, LatticeOp op);
RuleSequence pointwise_positive_part(const RuleSequence& a);
RuleSequence pointwise_negative_part(const RuleSequence& a);
RuleSequence pointwise_modulus(const RuleSequence& a);

/// Limit and eventual monotonicity of one coordinate rule, certified
/// symbolically from the rational function.
struct TailClass {
  enum class Limit { Converges, DivergesPlus, DivergesMinus };
  Limit limit = Limit::Converges;
  Rational limit_value;  // when Converges
  enum class Monotone { NonIncreasing, NonDecreasing, Constant, Unknown };
  Monotone monotone = Monotone::Unknown;
  long long from_n = 1;  // monotonicity holds for n >= from_n
};
TailClass tail_class(const TermExpr& e);

/// Average of x_k over the window (p_n, q_n] for a scalar sequence.
Rational deferred_cesaro(const RuleSequence& x, const DeferredPair& pair, long long n,
                         Budget& budget);

/// Empirical-plus-symbolic test of the windowed-mean criterion
/// (1 / (q_n - p_n)) * sum |x_k - limit| -> 0 for a scalar sequence.
struct EmpiricalCheck {
  enum class Kind { Consistent, Refuted, Inconclusive };
  Kind kind = Kind::Inconclusive;
  Rational final_value;                 // last windowed mean computed
  long long at_n = 0;                   // index of that window
  std::optional<Rational> lower_bound;  // certified mean lower bound when refuted
  std::string note;
};
EmpiricalCheck strong_dpq_check(const RuleSequence& x, const Rational& limit,
                                const DeferredPair& pair, long long n_max,
                                const Rational& tol, long long budget_units);

/// Scalar deferred-statistical convergence at tolerance eps: the density of
/// the exceedance set { k : |x_k - limit| >= eps } along the pair.  The
/// exceedance set is assembled exactly from the piece structure whenever the
/// per-piece signs can be certified; otherwise windows are sampled.
struct RealStatCheck {
  enum class Kind { ConvergentExact, NotConvergentExact, Estimated, Inconclusive };
  Kind kind = Kind::Inconclusive;
  DensityResult exceedance;
  std::string exceedance_set;  // rendering of the exact set when available
  std::string note;
};
RealStatCheck deferred_stat_check_real(const RuleSequence& x, const Rational& limit,
                                       const Rational& eps, const DeferredPair& pair,
                                       long long n_max, long long budget_units);

}  // namespace latconv
