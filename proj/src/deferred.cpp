#include "latconv/deferred.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace latconv {

long long IndexRule::operator()(long long n) const {
  __int128 v = static_cast<__int128>(a) * n + b;
  if (v > 4'000'000'000'000'000'000LL || v < 0)
    throw Error("index rule value overflows at n = " + std::to_string(n));
  return static_cast<long long>(v);
}

std::string IndexRule::str() const {
  if (a == 0) return std::to_string(b);
  std::string out = a == 1 ? "n" : std::to_string(a) + "n";
  if (b != 0) out += "+" + std::to_string(b);
  return out;
}

std::optional<PairViolation> DeferredPair::violation(const IndexRule& p, const IndexRule& q) {
  if (p.a < 0 || p.b < 0 || q.a < 0 || q.b < 0)
    return PairViolation{"rule coefficients must be nonnegative", 0};
  if (q.a < 1) return PairViolation{"q_n -> infinity requires slope >= 1", 0};
  long long da = q.a - p.a, db = q.b - p.b;
  if (da < 0) {
    // p_n >= q_n first where da*n + db <= 0, i.e. n >= db / (-da).
    long long n = db <= 0 ? 1 : (db + (-da) - 1) / (-da);
    if (n < 1) n = 1;
    return PairViolation{"p_n < q_n for all n >= 1", n};
  }
  if (da + db <= 0)  // minimum of (q-p)(n) over n >= 1 sits at n = 1
    return PairViolation{"p_n < q_n for all n >= 1", 1};
  return std::nullopt;
}

DeferredPair DeferredPair::make(IndexRule p, IndexRule q) {
  if (auto v = violation(p, q)) {
    std::string msg = "invalid deferred pair (p=" + p.str() + ", q=" + q.str() +
                      "): condition '" + v->condition + "' fails";
    if (v->at_n > 0) msg += " at n = " + std::to_string(v->at_n);
    throw Error(msg);
  }
  return DeferredPair(p, q);
}

DeferredPair DeferredPair::natural() { return make(IndexRule{0, 0}, IndexRule{1, 0}); }

std::string DeferredPair::str() const {
  return "(p=" + p_.str() + ", q=" + q_.str() + ")";
}

std::optional<Rational> exact_width_density(const IndexSet& s) {
  using Kind = IndexSet::Kind;
  switch (s.kind()) {
    case Kind::All: return Rational(1);
    case Kind::Empty: return Rational(0);
    case Kind::Finite: return Rational(0);
    case Kind::AP: return Rational(BigInt(1), BigInt(s.modulus()));
    case Kind::PowerImage: return Rational(0);
    case Kind::Complement: {
      auto d = exact_width_density(s.child(0));
      if (!d) return std::nullopt;
      return Rational(1) - *d;
    }
    case Kind::Union: {
      IndexSet a = s.child(0), b = s.child(1);
      auto da = exact_width_density(a), db = exact_width_density(b);
      if ((da && *da == Rational(1)) || (db && *db == Rational(1))) return Rational(1);
      if (da && da->is_zero()) return db;
      if (db && db->is_zero()) return da;
      // Inclusion-exclusion on subtrees; only the union side recurses through
      // intersections, so the two cases cannot call each other forever.
      if (da && db) {
        auto dab = exact_width_density(IndexSet::set_intersection(a, b).simplified());
        if (!dab) return std::nullopt;
        return *da + *db - *dab;
      }
      return std::nullopt;
    }
    case Kind::Intersection: {
      auto da = exact_width_density(s.child(0)), db = exact_width_density(s.child(1));
      if ((da && da->is_zero()) || (db && db->is_zero())) return Rational(0);
      // A density-one conjunct is absorbed: the symmetric difference to the
      // other side lives inside a null set.
      if (da && *da == Rational(1)) return db;
      if (db && *db == Rational(1)) return da;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

// Geometric grid 1, 2, 4, ... capped by n_max, always ending at n_max.
std::vector<long long> geometric_grid(long long n_max) {
  std::vector<long long> ns;
  for (long long n = 1; n < n_max; n *= 2) ns.push_back(n);
  if (ns.empty() || ns.back() != n_max) ns.push_back(n_max);
  return ns;
}

Rational spread(const std::vector<Rational>& vals, std::size_t tail) {
  Rational lo = vals[vals.size() - tail], hi = lo;
  for (std::size_t i = vals.size() - tail; i < vals.size(); ++i) {
    lo = min(lo, vals[i]);
    hi = max(hi, vals[i]);
  }
  return hi - lo;
}

DensityResult estimate_on_grid(const IndexSet& set, const DeferredPair& pair,
                               long long n_max, Budget& budget) {
  std::vector<long long> ns = geometric_grid(n_max);
  std::vector<Rational> vals;
  std::vector<long long> at;
  std::string stop_note;
  for (long long n : ns) {
    try {
      WindowCount wc = set.count_window(pair.p(n), pair.q(n), budget);
      vals.push_back(Rational(BigInt(wc.count), BigInt(pair.width(n))));
      at.push_back(n);
    } catch (const BudgetExceeded&) {
      stop_note = "budget exhausted after n = " + std::to_string(at.empty() ? 0 : at.back());
      break;
    }
  }
  DensityResult r;
  if (vals.size() < 3) {
    r.kind = DensityResult::Kind::Inconclusive;
    r.note = stop_note.empty() ? "too few grid points" : stop_note;
    return r;
  }
  r.kind = DensityResult::Kind::Estimated;
  r.value = vals.back();
  r.at_n = at.back();
  std::size_t tail = std::max<std::size_t>(2, (vals.size() + 9) / 10);
  r.oscillation = spread(vals, tail);
  r.note = stop_note.empty() ? "partial densities on geometric grid" : stop_note;
  return r;
}

// Constant-width windows over an eventually periodic membership pattern: the
// window count is itself eventually periodic in n, so the density either
// stabilizes (all cycle values equal) or provably has no limit.
std::optional<DensityResult> constant_width_periodic(const IndexSet& set,
                                                     const DeferredPair& pair,
                                                     long long n_max, Budget& budget) {
  IndexSet::Periodicity per = set.periodicity();
  if (!per.known) return std::nullopt;
  long long W = pair.width(1);  // constant width
  long long a = pair.p_rule().a, b = pair.p_rule().b;
  long long pi = per.period / std::gcd(a, per.period);
  if (pi < 1) pi = 1;
  long long n0 = 1;
  if (per.transient > b) n0 = std::max<long long>(1, (per.transient - b + a - 1) / a);
  // Make sure every window in the probed cycle sits beyond the transient.
  while (pair.p(n0) < per.transient) ++n0;
  std::vector<long long> counts;
  try {
    for (long long j = 0; j < pi; ++j) {
      WindowCount wc = set.count_window(pair.p(n0 + j), pair.q(n0 + j), budget);
      counts.push_back(wc.count);
    }
  } catch (const BudgetExceeded&) {
    return std::nullopt;  // fall back to plain estimation
  }
  long long clo = *std::min_element(counts.begin(), counts.end());
  long long chi = *std::max_element(counts.begin(), counts.end());
  DensityResult r;
  if (clo == chi) {
    r.kind = DensityResult::Kind::Estimated;
    r.value = Rational(BigInt(clo), BigInt(W));
    r.at_n = n_max;
    r.oscillation = Rational(0);
    r.note = "window count is eventually constant (period " + std::to_string(pi) + ")";
    return r;
  }
  r.kind = DensityResult::Kind::NoLimit;
  r.cluster_lo = Rational(BigInt(clo), BigInt(W));
  r.cluster_hi = Rational(BigInt(chi), BigInt(W));
  r.value = r.cluster_hi;
  r.at_n = n0 + pi - 1;
  r.note = "constant-width window counts cycle with period " + std::to_string(pi) +
           "; partial densities oscillate between " + r.cluster_lo.str() + " and " +
           r.cluster_hi.str();
  return r;
}

}  // namespace

DensityResult deferred_density(const IndexSet& set, const DeferredPair& pair,
                               long long n_max, long long budget_units) {
  Budget budget(budget_units);
  IndexSet s = set.simplified();
  DensityResult r;
  // All/Empty/Finite have eventually constant partial densities under every
  // valid pair, growing width or not.
  if (s.kind() == IndexSet::Kind::All || s.kind() == IndexSet::Kind::Empty ||
      s.kind() == IndexSet::Kind::Finite) {
    r.kind = DensityResult::Kind::Exact;
    r.value = s.kind() == IndexSet::Kind::All ? Rational(1) : Rational(0);
    r.note = "closed form";
    return r;
  }
  if (pair.width_grows()) {
    if (auto d = exact_width_density(s)) {
      r.kind = DensityResult::Kind::Exact;
      r.value = *d;
      r.note = "closed form";
      return r;
    }
  } else {
    if (auto pr = constant_width_periodic(s, pair, n_max, budget)) return *pr;
  }
  return estimate_on_grid(s, pair, n_max, budget);
}

DensityResult natural_density(const IndexSet& set, long long n_max, long long budget_units) {
  using Kind = IndexSet::Kind;
  // Closed forms for windows (0, n], written out independently of the
  // deferred engine so the two routes can cross-check each other.
  struct Closed {
    static std::optional<Rational> density(const IndexSet& s) {
      switch (s.kind()) {
        case Kind::All: return Rational(1);
        case Kind::Empty: return Rational(0);
        case Kind::Finite: return Rational(0);
        case Kind::AP: return Rational(BigInt(1), BigInt(s.modulus()));
        case Kind::PowerImage: return Rational(0);
        case Kind::Complement: {
          auto d = density(s.child(0));
          if (!d) return std::nullopt;
          return Rational(1) - *d;
        }
        case Kind::Union: {
          auto da = density(s.child(0)), db = density(s.child(1));
          if ((da && *da == Rational(1)) || (db && *db == Rational(1))) return Rational(1);
          if (da && da->is_zero()) return db;
          if (db && db->is_zero()) return da;
          if (da && db) {
            auto dab = density(
                IndexSet::set_intersection(s.child(0), s.child(1)).simplified());
            if (!dab) return std::nullopt;
            return *da + *db - *dab;
          }
          return std::nullopt;
        }
        case Kind::Intersection: {
          auto da = density(s.child(0)), db = density(s.child(1));
          if ((da && da->is_zero()) || (db && db->is_zero())) return Rational(0);
          if (da && *da == Rational(1)) return db;
          if (db && *db == Rational(1)) return da;
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
  };
  IndexSet s = set.simplified();
  DensityResult r;
  if (auto d = Closed::density(s)) {
    r.kind = DensityResult::Kind::Exact;
    r.value = *d;
    r.note = "closed form";
    return r;
  }
  // Estimation: direct membership counting over prefixes (its own loop).
  long long used = 0;
  std::vector<Rational> vals;
  std::vector<long long> at;
  long long count = 0, upto = 0;
  for (long long n : geometric_grid(n_max)) {
    if (used + (n - upto) > budget_units) break;
    for (long long k = upto + 1; k <= n; ++k)
      if (s.contains(k)) ++count;
    used += n - upto;
    upto = n;
    vals.push_back(Rational(BigInt(count), BigInt(n)));
    at.push_back(n);
  }
  if (vals.size() < 3) {
    r.kind = DensityResult::Kind::Inconclusive;
    r.note = "budget exhausted before enough prefix points";
    return r;
  }
  r.kind = DensityResult::Kind::Estimated;
  r.value = vals.back();
  r.at_n = at.back();
  std::size_t tail = std::max<std::size_t>(2, (vals.size() + 9) / 10);
  r.oscillation = spread(vals, tail);
  r.note = "partial densities on geometric grid";
  return r;
}

RatioBound ratio_bounded(const DeferredPair& pair) {
  long long pa = pair.p_rule().a, pb = pair.p_rule().b;
  long long da = pair.q_rule().a - pa, db = pair.q_rule().b - pb;
  RatioBound out;
  if (pa == 0) {
    out.bounded = true;
    // p_n is the constant pb and the width is nondecreasing: supremum at n=1.
    out.supremum = Rational(BigInt(pb), BigInt(da + db));
    return out;
  }
  if (da == 0) {
    out.bounded = false;  // p_n grows against a constant width
    return out;
  }
  out.bounded = true;
  Rational at1{BigInt(pa + pb), BigInt(da + db)};
  Rational lim{BigInt(pa), BigInt(da)};
  out.supremum = max(at1, lim);  // the ratio is monotone toward its limit
  return out;
}

namespace {

// g(n) = slope*n + offset >= 0 for all n >= 1, or the smallest violating n.
std::optional<long long> affine_nonneg_violation(long long slope, long long offset) {
  if (slope >= 0) {
    if (slope + offset >= 0) return std::nullopt;
    return 1;
  }
  // Eventually negative: first n with slope*n + offset < 0.
  long long n = offset < 0 ? 1 : offset / (-slope) + 1;
  if (n < 1) n = 1;
  return n;
}

GapGrowth classify_gap(long long slope, long long offset) {
  if (slope != 0) return GapGrowth::Growing;
  return offset == 0 ? GapGrowth::Zero : GapGrowth::Bounded;
}

}  // namespace

RefinementReport refinement_check(const DeferredPair& inner, const DeferredPair& outer) {
  RefinementReport r;
  long long pga = inner.p_rule().a - outer.p_rule().a;
  long long pgb = inner.p_rule().b - outer.p_rule().b;
  long long qga = outer.q_rule().a - inner.q_rule().a;
  long long qgb = outer.q_rule().b - inner.q_rule().b;
  if (auto n = affine_nonneg_violation(pga, pgb)) {
    r.nested = false;
    r.condition = "p_n <= p'_n";
    r.at_n = *n;
    return r;
  }
  if (auto n = affine_nonneg_violation(qga, qgb)) {
    r.nested = false;
    r.condition = "q'_n <= q_n";
    r.at_n = *n;
    return r;
  }
  r.nested = true;
  r.p_gap = classify_gap(pga, pgb);
  r.q_gap = classify_gap(qga, qgb);
  long long inner_w = inner.q_rule().a - inner.p_rule().a;
  long long outer_w = outer.q_rule().a - outer.p_rule().a;
  if (inner_w != 0) r.width_ratio = Rational(BigInt(outer_w), BigInt(inner_w));
  return r;
}

}  // namespace latconv
