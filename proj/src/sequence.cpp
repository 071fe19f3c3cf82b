#include "latconv/sequence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "latconv/errors.hpp"

namespace latconv {

namespace {

constexpr long long kTransientCap = 100'000;

IndexSet finite_or_empty(const std::vector<long long>& elems) {
  return elems.empty() ? IndexSet::empty() : IndexSet::finite(elems);
}

std::vector<long long> range_1_to(long long top) {
  std::vector<long long> out;
  out.reserve(static_cast<size_t>(std::max<long long>(top, 0)));
  for (long long k = 1; k <= top; ++k) out.push_back(k);
  return out;
}

}  // namespace

TermExpr TermExpr::constant(const Rational& c) { return TermExpr(RationalFn::constant(c)); }

TermExpr TermExpr::variable() { return TermExpr(RationalFn::variable()); }

void TermExpr::require_nonvanishing(const TermExpr& divisor) {
  if (divisor.fn_.is_zero()) throw Error("division by the zero expression");
  auto roots = divisor.fn_.num().integer_roots_geq1();
  if (!roots)
    throw Error("cannot certify the divisor " + divisor.str() + " is nonvanishing for n >= 1");
  if (!roots->empty())
    throw Error("divisor " + divisor.str() + " vanishes at n = " + std::to_string(roots->front()));
}

TermExpr TermExpr::operator-() const { return TermExpr(-fn_); }

TermExpr operator+(const TermExpr& a, const TermExpr& b) { return TermExpr(a.fn_ + b.fn_); }

TermExpr operator-(const TermExpr& a, const TermExpr& b) { return TermExpr(a.fn_ - b.fn_); }

TermExpr operator*(const TermExpr& a, const TermExpr& b) { return TermExpr(a.fn_ * b.fn_); }

TermExpr operator/(const TermExpr& a, const TermExpr& b) {
  TermExpr::require_nonvanishing(b);
  return TermExpr(a.fn_ / b.fn_);
}

TermExpr TermExpr::pow(int k) const {
  if (k < 0) require_nonvanishing(*this);
  return TermExpr(fn_.pow(k));
}

RuleSequence::RuleSequence(int dim, std::vector<SeqPiece> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
  if (dim_ < 1) throw Error("sequence dimension must be at least 1");
  if (pieces_.empty()) throw Error("sequence needs at least one piece");
  for (const auto& p : pieces_)
    if (static_cast<int>(p.coords.size()) != dim_)
      throw DimensionMismatch(dim_, static_cast<int>(p.coords.size()));
  if (pieces_.back().guard.simplified().kind() != IndexSet::Kind::All)
    throw Error("the last piece guard must cover every remaining index");
}

RuleSequence RuleSequence::constant(const LatticeVector& v) {
  std::vector<TermExpr> coords;
  coords.reserve(static_cast<size_t>(v.dim()));
  for (int c = 0; c < v.dim(); ++c) coords.push_back(TermExpr::constant(v[c]));
  return RuleSequence(v.dim(), {{IndexSet::all(), std::move(coords)}});
}

int RuleSequence::piece_index_at(long long n) const {
  for (size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].guard.contains(n)) return static_cast<int>(i);
  return static_cast<int>(pieces_.size()) - 1;  // unreachable: last guard is ALL
}

LatticeVector RuleSequence::eval(long long n) const {
  const SeqPiece& p = pieces_[static_cast<size_t>(piece_index_at(n))];
  std::vector<Rational> vals;
  vals.reserve(static_cast<size_t>(dim_));
  for (const auto& e : p.coords) vals.push_back(e.eval(n));
  return LatticeVector(std::move(vals));
}

std::vector<IndexSet> RuleSequence::effective_guards() const {
  std::vector<IndexSet> out;
  out.reserve(pieces_.size());
  IndexSet seen = IndexSet::empty();
  for (const auto& p : pieces_) {
    out.push_back(
        IndexSet::set_intersection(p.guard, IndexSet::complement(seen)).simplified());
    seen = IndexSet::set_union(seen, p.guard).simplified();
  }
  return out;
}

bool operator==(const RuleSequence& a, const RuleSequence& b) {
  if (a.dim_ != b.dim_ || a.pieces_.size() != b.pieces_.size()) return false;
  for (size_t i = 0; i < a.pieces_.size(); ++i) {
    if (!(a.pieces_[i].guard.simplified() == b.pieces_[i].guard.simplified())) return false;
    if (a.pieces_[i].coords != b.pieces_[i].coords) return false;
  }
  return true;
}

std::string RuleSequence::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (i) os << "; ";
    os << pieces_[i].guard.str() << " -> (";
    for (size_t c = 0; c < pieces_[i].coords.size(); ++c) {
      if (c) os << ", ";
      os << pieces_[i].coords[c].str();
    }
    os << ")";
  }
  return os.str();
}

RuleSequence pointwise_linear(const Rational& la, const RuleSequence& a,
                              const Rational& mu, const RuleSequence& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  TermExpr cla = TermExpr::constant(la), cmu = TermExpr::constant(mu);
  auto effa = a.effective_guards(), effb = b.effective_guards();
  std::vector<SeqPiece> pieces;
  for (size_t i = 0; i < effa.size(); ++i) {
    for (size_t j = 0; j < effb.size(); ++j) {
      IndexSet g = IndexSet::set_intersection(effa[i], effb[j]).simplified();
      if (g.kind() == IndexSet::Kind::Empty) continue;
      std::vector<TermExpr> coords;
      coords.reserve(static_cast<size_t>(a.dim()));
      for (int c = 0; c < a.dim(); ++c)
        coords.push_back(cla * a.pieces()[i].coords[static_cast<size_t>(c)] +
                         cmu * b.pieces()[j].coords[static_cast<size_t>(c)]);
      pieces.push_back({g, std::move(coords)});
    }
  }
  pieces.back().guard = IndexSet::all();  // regions partition N and are disjoint
  return RuleSequence(a.dim(), std::move(pieces));
}

RuleSequence pointwise_negate(const RuleSequence& a) {
  std::vector<SeqPiece> pieces;
  pieces.reserve(a.pieces().size());
  for (const auto& p : a.pieces()) {
    std::vector<TermExpr> coords;
    coords.reserve(p.coords.size());
    for (const auto& e : p.coords) coords.push_back(-e);
    pieces.push_back({p.guard, std::move(coords)});
  }
  return RuleSequence(a.dim(), std::move(pieces));
}

RuleSequence pointwise_shift(const RuleSequence& a, const LatticeVector& v) {
  return pointwise_linear(Rational(1), a, Rational(1), RuleSequence::constant(v));
}

RuleSequence pointwise_lattice(const RuleSequence& a, const RuleSequence& b, LatticeOp op) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  int d = a.dim();
  auto effa = a.effective_guards(), effb = b.effective_guards();
  std::vector<SeqPiece> pieces;
  for (size_t i = 0; i < effa.size(); ++i) {
    for (size_t j = 0; j < effb.size(); ++j) {
      IndexSet g = IndexSet::set_intersection(effa[i], effb[j]).simplified();
      if (g.kind() == IndexSet::Kind::Empty) continue;
      const auto& ca = a.pieces()[i].coords;
      const auto& cb = b.pieces()[j].coords;
      // Decide each coordinate's winner on the tail of this region.
      std::vector<bool> take_a(static_cast<size_t>(d), true);
      long long region_from = 1;
      for (int c = 0; c < d; ++c) {
        TermExpr diff = ca[static_cast<size_t>(c)] - cb[static_cast<size_t>(c)];
        EventualSign ev = diff.fn().eventual_sign();
        if (!ev.known)
          throw Error("cannot certify a lattice combination: sign of " + diff.str() +
                      " is unresolved");
        take_a[static_cast<size_t>(c)] =
            op == LatticeOp::Join ? ev.sign >= 0 : ev.sign <= 0;
        region_from = std::max(region_from, ev.from_n);
      }
      if (region_from > kTransientCap)
        throw Error("lattice combination transient too long (needs n >= " +
                    std::to_string(region_from) + ")");
      // Indices of the region before the tail may mix winners; split them
      // into finite pieces grouped by the per-coordinate winner pattern.
      std::map<std::vector<bool>, std::vector<long long>> prefix;
      for (long long n = 1; n < region_from; ++n) {
        if (!g.contains(n)) continue;
        std::vector<bool> w(static_cast<size_t>(d));
        for (int c = 0; c < d; ++c) {
          Rational av = ca[static_cast<size_t>(c)].eval(n);
          Rational bv = cb[static_cast<size_t>(c)].eval(n);
          w[static_cast<size_t>(c)] = op == LatticeOp::Join ? !(av < bv) : !(bv < av);
        }
        prefix[w].push_back(n);
      }
      auto coords_for = [&](const std::vector<bool>& w) {
        std::vector<TermExpr> coords;
        coords.reserve(static_cast<size_t>(d));
        for (int c = 0; c < d; ++c)
          coords.push_back(w[static_cast<size_t>(c)] ? ca[static_cast<size_t>(c)]
                                                     : cb[static_cast<size_t>(c)]);
        return coords;
      };
      for (const auto& [pattern, ns] : prefix)
        if (pattern != take_a) pieces.push_back({IndexSet::finite(ns), coords_for(pattern)});
      pieces.push_back({g, coords_for(take_a)});
    }
  }
  pieces.back().guard = IndexSet::all();
  return RuleSequence(d, std::move(pieces));
}

RuleSequence pointwise_positive_part(const RuleSequence& a) {
  return pointwise_lattice(a, RuleSequence::constant(LatticeVector::zero(a.dim())),
                           LatticeOp::Join);
}

RuleSequence pointwise_negative_part(const RuleSequence& a) {
  return pointwise_lattice(pointwise_negate(a),
                           RuleSequence::constant(LatticeVector::zero(a.dim())),
                           LatticeOp::Join);
}

RuleSequence pointwise_modulus(const RuleSequence& a) {
  return pointwise_lattice(a, pointwise_negate(a), LatticeOp::Join);
}

TailClass tail_class(const TermExpr& e) {
  TailClass out;
  auto lim = e.fn().limit_at_infinity();
  switch (lim.kind) {
    case RationalFn::Limit::Kind::Finite:
      out.limit = TailClass::Limit::Converges;
      out.limit_value = lim.value;
      break;
    case RationalFn::Limit::Kind::PlusInfinity:
      out.limit = TailClass::Limit::DivergesPlus;
      break;
    case RationalFn::Limit::Kind::MinusInfinity:
      out.limit = TailClass::Limit::DivergesMinus;
      break;
  }
  Poly r = e.fn().derivative_numerator();
  if (r.is_zero()) {
    out.monotone = TailClass::Monotone::Constant;
    out.from_n = 1;
    return out;
  }
  BigInt bound = r.root_bound();
  if (e.fn().den().degree() >= 1) bound = std::max(bound, e.fn().den().root_bound());
  if (bound > 1'000'000'000) {
    out.monotone = TailClass::Monotone::Unknown;
    return out;
  }
  out.from_n = bound.convert_to<long long>() + 1;
  out.monotone = r.leading().sign() < 0 ? TailClass::Monotone::NonIncreasing
                                        : TailClass::Monotone::NonDecreasing;
  return out;
}

Rational deferred_cesaro(const RuleSequence& x, const DeferredPair& pair, long long n,
                         Budget& budget) {
  if (x.dim() != 1) throw Error("the windowed mean is defined for scalar sequences");
  long long p = pair.p(n), q = pair.q(n);
  long long w = q - p;
  budget.charge(w, "windowed mean");
  Rational sum(0);
  for (long long k = p + 1; k <= q; ++k) sum = sum + x.eval(k)[0];
  return sum / Rational(w);
}

namespace {

// Certified bounds on the windowed means of |x_k - limit|, geometric in n up
// to n_max.  Summing exact rationals lets denominators grow without bound
// (harmonic tails reach lcm(1..n)), so each term is rounded down/up at a fixed
// 2^-96 scale instead: the sums stay small and the slack only widens the
// interval, never tightening a verdict.
struct MeanBound {
  long long n;
  Rational lo, hi;
};

std::vector<MeanBound> mean_grid(const RuleSequence& x, const Rational& limit,
                                 const DeferredPair& pair, long long n_max, Budget& budget) {
  constexpr unsigned kScaleBits = 96;
  std::vector<long long> ns;
  for (long long n = 1; n < n_max; n *= 2) ns.push_back(n);
  ns.push_back(n_max);
  std::vector<MeanBound> means;
  for (long long n : ns) {
    long long p = pair.p(n), q = pair.q(n);
    try {
      budget.charge(q - p, "windowed mean grid");
    } catch (const BudgetExceeded&) {
      break;
    }
    BigInt lo(0), hi(0);
    for (long long k = p + 1; k <= q; ++k) {
      Rational t = abs(x.eval(k)[0] - limit);
      BigInt div, rem;
      boost::multiprecision::divide_qr(BigInt(t.numerator() << kScaleBits), t.denominator(),
                                       div, rem);
      lo += div;
      hi += rem.is_zero() ? div : div + 1;
    }
    BigInt w = BigInt(q - p) << kScaleBits;
    means.push_back({n, Rational(lo, w), Rational(hi, w)});
  }
  return means;
}

}  // namespace

EmpiricalCheck strong_dpq_check(const RuleSequence& x, const Rational& limit,
                                const DeferredPair& pair, long long n_max,
                                const Rational& tol, long long budget_units) {
  if (x.dim() != 1) throw Error("the windowed-mean criterion is for scalar sequences");
  EmpiricalCheck out;

  // Symbolic refutation first: when one piece carries the whole tail and its
  // rule stays a fixed distance from the limit, the mean over a late window
  // has a certified lower bound.
  auto effs = x.effective_guards();
  long long finite_bound = 0;
  std::vector<size_t> active;
  for (size_t i = 0; i < effs.size(); ++i) {
    switch (effs[i].kind()) {
      case IndexSet::Kind::Empty:
        break;
      case IndexSet::Kind::Finite:
        finite_bound = std::max(finite_bound, effs[i].elements().back());
        break;
      default:
        active.push_back(i);
    }
  }
  bool one_rule = !active.empty();
  for (size_t k = 1; k < active.size(); ++k)
    if (x.pieces()[active[k]].coords[0] != x.pieces()[active[0]].coords[0]) one_rule = false;
  if (one_rule) {
    RationalFn g = x.pieces()[active[0]].coords[0].fn() - RationalFn::constant(limit);
    auto lim = g.limit_at_infinity();
    bool separated = lim.kind != RationalFn::Limit::Kind::Finite || !lim.value.is_zero();
    if (separated) {
      Rational delta0 = lim.kind == RationalFn::Limit::Kind::Finite
                            ? abs(lim.value) / Rational(2)
                            : max(Rational(1), Rational(2) * tol);
      EventualSign gs = g.eventual_sign();
      if (gs.known && gs.sign != 0) {
        RationalFn h = gs.sign > 0 ? g - RationalFn::constant(delta0)
                                   : (-g) - RationalFn::constant(delta0);
        EventualSign hs = h.eventual_sign();
        if (hs.known && hs.sign >= 0) {
          long long m = std::max(hs.from_n - 1, finite_bound);  // |x_k - l| >= delta0 for k > m
          long long p = pair.p(n_max), q = pair.q(n_max);
          long long w = q - p;
          long long small = std::max<long long>(0, std::min(q, m) - p);
          if (small < w) {
            Rational bound = delta0 * Rational(w - small) / Rational(w);
            if (tol < bound) {
              out.kind = EmpiricalCheck::Kind::Refuted;
              out.at_n = n_max;
              out.lower_bound = bound;
              out.final_value = bound;
              out.note = "window (" + std::to_string(p) + ", " + std::to_string(q) +
                         "] keeps |x_k - limit| >= " + delta0.str() + " outside " +
                         std::to_string(small) + " indices";
              return out;
            }
          }
        }
      }
    }
  }

  Budget budget(budget_units);
  auto means = mean_grid(x, limit, pair, n_max, budget);
  if (!means.empty()) {
    out.at_n = means.back().n;
    out.final_value = means.back().hi;
  }
  if (means.size() >= 3) {
    size_t z = means.size();
    // Nonincrease and the tolerance must hold for the certified bounds.
    bool settled = !(means[z - 3].lo < means[z - 2].hi) &&
                   !(means[z - 2].lo < means[z - 1].hi);
    if (settled && means.back().hi < tol) {
      out.kind = EmpiricalCheck::Kind::Consistent;
      out.note = "windowed means nonincreasing over the last grid points and below tolerance";
      return out;
    }
  }
  out.kind = EmpiricalCheck::Kind::Inconclusive;
  out.note = means.size() < 3 ? "budget allowed fewer than 3 windows"
                              : "windowed means not settled below tolerance";
  return out;
}

RealStatCheck deferred_stat_check_real(const RuleSequence& x, const Rational& limit,
                                       const Rational& eps, const DeferredPair& pair,
                                       long long n_max, long long budget_units) {
  if (x.dim() != 1) throw Error("scalar sequence required");
  if (!(Rational(0) < eps)) throw Error("eps must be positive");
  RealStatCheck out;

  // Exact route: per piece, certify whether |x - limit| >= eps holds on the
  // tail, and patch the finitely many early indices by direct evaluation.
  auto effs = x.effective_guards();
  bool exact_ok = true;
  std::vector<IndexSet> parts;
  for (size_t i = 0; i < effs.size() && exact_ok; ++i) {
    if (effs[i].kind() == IndexSet::Kind::Empty) continue;
    const TermExpr& f = x.pieces()[i].coords[0];
    RationalFn g = f.fn() - RationalFn::constant(limit);
    EventualSign s1 = (g - RationalFn::constant(eps)).eventual_sign();
    EventualSign s2 = ((-g) - RationalFn::constant(eps)).eventual_sign();
    if (!s1.known || !s2.known) {
      exact_ok = false;
      break;
    }
    long long from = std::max(s1.from_n, s2.from_n);
    if (from > kTransientCap) {
      exact_ok = false;
      break;
    }
    bool tail_exceeds = s1.sign >= 0 || s2.sign >= 0;
    std::vector<long long> additions;
    for (long long n = 1; n < from; ++n)
      if (effs[i].contains(n) && !(abs(f.eval(n) - limit) < eps)) additions.push_back(n);
    if (tail_exceeds) {
      IndexSet tail = from <= 1
                          ? effs[i]
                          : IndexSet::set_intersection(
                                effs[i], IndexSet::complement(IndexSet::finite(range_1_to(from - 1))));
      parts.push_back(additions.empty()
                          ? tail
                          : IndexSet::set_union(tail, IndexSet::finite(additions)));
    } else if (!additions.empty()) {
      parts.push_back(IndexSet::finite(additions));
    }
  }

  if (exact_ok) {
    IndexSet exceed = IndexSet::empty();
    for (const auto& p : parts) exceed = IndexSet::set_union(exceed, p);
    exceed = exceed.simplified();
    out.exceedance_set = exceed.str();
    out.exceedance = deferred_density(exceed, pair, n_max, budget_units);
    switch (out.exceedance.kind) {
      case DensityResult::Kind::Exact:
        out.kind = out.exceedance.value.is_zero() ? RealStatCheck::Kind::ConvergentExact
                                                  : RealStatCheck::Kind::NotConvergentExact;
        break;
      case DensityResult::Kind::Estimated:
        out.kind = RealStatCheck::Kind::Estimated;
        break;
      default:
        out.kind = RealStatCheck::Kind::Inconclusive;
        out.note = out.exceedance.note;
    }
    return out;
  }

  // Sampled fallback: fraction of each window where |x_k - limit| >= eps.
  Budget budget(budget_units);
  std::vector<long long> ns;
  for (long long n = 1; n < n_max; n *= 2) ns.push_back(n);
  ns.push_back(n_max);
  std::vector<std::pair<long long, Rational>> fracs;
  for (long long n : ns) {
    long long p = pair.p(n), q = pair.q(n);
    try {
      budget.charge(q - p, "exceedance sampling");
    } catch (const BudgetExceeded&) {
      break;
    }
    long long hits = 0;
    for (long long k = p + 1; k <= q; ++k)
      if (!(abs(x.eval(k)[0] - limit) < eps)) ++hits;
    fracs.emplace_back(n, Rational(hits) / Rational(q - p));
  }
  out.note = "per-piece signs not certified; sampled windows";
  if (fracs.size() >= 3) {
    out.kind = RealStatCheck::Kind::Estimated;
    out.exceedance.kind = DensityResult::Kind::Estimated;
    out.exceedance.value = fracs.back().second;
    out.exceedance.at_n = fracs.back().first;
    size_t tail = std::max<size_t>(2, (fracs.size() + 9) / 10);
    Rational lo = fracs[fracs.size() - tail].second, hi = lo;
    for (size_t i = fracs.size() - tail; i < fracs.size(); ++i) {
      lo = min(lo, fracs[i].second);
      hi = max(hi, fracs[i].second);
    }
    out.exceedance.oscillation = hi - lo;
  } else {
    out.kind = RealStatCheck::Kind::Inconclusive;
    out.note += "; budget allowed fewer than 3 windows";
  }
  return out;
}

}  // namespace latconv
