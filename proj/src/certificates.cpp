#include "latconv/certificates.hpp"

#include <algorithm>
#include <sstream>

#include "latconv/errors.hpp"

namespace latconv {

const char* CheckVerdict::kind_name(Kind k) {
  switch (k) {
    case Kind::Verified: return "verified";
    case Kind::Refuted: return "refuted";
    case Kind::Inconclusive: return "inconclusive";
    case Kind::PreconditionFailed: return "precondition-failed";
  }
  return "?";
}

namespace {

constexpr long long kTransientCap = 100'000;
constexpr long long kScanCap = 2'000'000;  // witness / bridge membership hunts

CheckVerdict verdict_refuted(std::string reason, std::optional<long long> witness,
                             std::string detail) {
  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Refuted;
  v.reason = std::move(reason);
  v.witness = witness;
  v.witness_detail = std::move(detail);
  return v;
}

CheckVerdict verdict_inconclusive(std::string reason) {
  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Inconclusive;
  v.reason = std::move(reason);
  return v;
}

CheckVerdict verdict_precondition(std::string reason, std::optional<long long> witness = {},
                                  std::string detail = {}) {
  CheckVerdict v;
  v.kind = CheckVerdict::Kind::PreconditionFailed;
  v.reason = std::move(reason);
  v.witness = witness;
  v.witness_detail = std::move(detail);
  return v;
}

std::string render_density(const DensityResult& d) {
  switch (d.kind) {
    case DensityResult::Kind::Exact:
      return d.value.str() + " (exact)";
    case DensityResult::Kind::Estimated:
      return d.value.str() + " at n = " + std::to_string(d.at_n) + " (estimate, oscillation " +
             d.oscillation.str() + ")";
    case DensityResult::Kind::NoLimit:
      return "no limit (cluster values " + d.cluster_lo.str() + " .. " + d.cluster_hi.str() + ")";
    case DensityResult::Kind::Inconclusive:
      return d.note.empty() ? "inconclusive" : "inconclusive: " + d.note;
  }
  return "?";
}

std::optional<long long> first_member_geq(const IndexSet& s, long long from, Budget& budget) {
  for (long long n = std::max<long long>(from, 1); n < from + kScanCap; ++n) {
    budget.charge(1, "membership scan");
    if (s.contains(n)) return n;
  }
  return std::nullopt;
}

DensityResult density_of(const IndexSet& s, const DeferredPair& pair, const CheckOptions& o,
                         bool natural_path) {
  return natural_path ? natural_density(s, o.n_max, o.budget_units)
                      : deferred_density(s, pair, o.n_max, o.budget_units);
}

void merge_evidence(CheckVerdict& into, const std::string& key_prefix,
                    const CheckVerdict& from) {
  for (const auto& [k, v] : from.evidence) into.evidence.emplace_back(key_prefix + k, v);
}

// ---- decrease ----------------------------------------------------------

CheckVerdict check_decrease_impl(const DecreaseCert& cert, const CheckOptions& opts,
                                 bool natural_path) {
  if (opts.prefix_n < 2) throw Error("prefix_n must be at least 2");
  const int dim = cert.z.dim();
  const IndexSet K = cert.set.simplified();

  // Density gate: delta_{p,q}(K) must be exactly 1.
  DensityResult dK = density_of(K, cert.pair, opts, natural_path);
  if (dK.exact() && dK.value != Rational(1)) {
    CheckVerdict v = verdict_refuted(
        "delta_{p,q}(K) = " + dK.value.str() + " (exact), not 1", std::nullopt,
        "density witness: the windowed densities converge to " + dK.value.str());
    v.evidence.emplace_back("density(K)", render_density(dK));
    return v;
  }
  bool density_ok = dK.exact();  // exact and == 1 past the branch above

  // Classify which pieces are active on K.
  auto effs = cert.z.effective_guards();
  long long finite_bound = 0;
  std::vector<size_t> active;
  for (size_t i = 0; i < effs.size(); ++i) {
    IndexSet s = IndexSet::set_intersection(effs[i], K).simplified();
    switch (s.kind()) {
      case IndexSet::Kind::Empty:
        break;
      case IndexSet::Kind::Finite:
        finite_bound = std::max(finite_bound, s.elements().back());
        break;
      default:
        active.push_back(i);
    }
  }
  bool one_rule = !active.empty();
  for (size_t k = 1; k < active.size(); ++k)
    if (cert.z.pieces()[active[k]].coords != cert.z.pieces()[active[0]].coords) one_rule = false;

  // Tail analysis of the K-active rule.
  std::string symbolic_block;  // empty when the tail is fully certified
  long long tail_from = 1;
  std::vector<TailClass> tails;
  if (!one_rule) {
    symbolic_block = active.empty() ? "K carries no infinite piece"
                                    : "multiple rules active on K";
  } else {
    for (int c = 0; c < dim; ++c)
      tails.push_back(tail_class(cert.z.pieces()[active[0]].coords[static_cast<size_t>(c)]));
    for (const auto& t : tails) {
      if (t.monotone == TailClass::Monotone::Unknown) {
        symbolic_block = "tail monotonicity unresolved";
        break;
      }
      tail_from = std::max(tail_from, t.from_n);
    }
    if (symbolic_block.empty() && tail_from > 1'000'000)
      symbolic_block = "tail transient too long (starts at n = " + std::to_string(tail_from) + ")";
  }

  long long p_end = std::max(opts.prefix_n, finite_bound);
  if (symbolic_block.empty()) p_end = std::max(p_end, tail_from);

  // Exact prefix scan over K-elements: nonnegative, pairwise nonincreasing.
  Budget budget(opts.budget_units);
  const LatticeVector zero = LatticeVector::zero(dim);
  long long last_k = 0, members = 0;
  std::optional<LatticeVector> last_v;
  try {
    for (long long n = 1; n <= p_end; ++n) {
      budget.charge(1, "decrease prefix scan");
      if (!K.contains(n)) continue;
      LatticeVector v = cert.z.eval(n);
      if (!leq(zero, v))
        return verdict_refuted("z has a negative coordinate on K, so its infimum is not 0", n,
                               "z_" + std::to_string(n) + " = " + v.str());
      if (last_v && !leq(v, *last_v))
        return verdict_refuted(
            "z is not nonincreasing on K", n,
            "z_" + std::to_string(last_k) + " = " + last_v->str() + ", z_" + std::to_string(n) +
                " = " + v.str());
      last_k = n;
      last_v = v;
      ++members;
    }
  } catch (const BudgetExceeded&) {
    return verdict_inconclusive("budget exceeded during the prefix scan");
  }

  // Symbolic refutations of the tail claims, each with a concrete witness.
  if (symbolic_block.empty()) {
    const auto& coords = cert.z.pieces()[active[0]].coords;
    const IndexSet& act = effs[active[0]];
    for (int c = 0; c < dim; ++c) {
      const TailClass& t = tails[static_cast<size_t>(c)];
      EventualSign fs = coords[static_cast<size_t>(c)].fn().eventual_sign();
      bool eventually_negative = fs.known && fs.sign < 0;
      if (eventually_negative) {
        auto k = first_member_geq(act, std::max(fs.from_n, finite_bound + 1), budget);
        if (k)
          return verdict_refuted(
              "z is eventually negative in coordinate " + std::to_string(c + 1) +
                  ", so its infimum is not 0",
              *k, "z_" + std::to_string(*k) + " = " + cert.z.eval(*k).str());
        return verdict_inconclusive("no K-element found to witness the negative tail");
      }
      bool increasing = t.monotone == TailClass::Monotone::NonDecreasing;
      if (increasing) {
        auto k1 = first_member_geq(act, std::max(tail_from, finite_bound + 1), budget);
        auto k2 = k1 ? first_member_geq(act, *k1 + 1, budget) : std::nullopt;
        if (k1 && k2 && !leq(cert.z.eval(*k2), cert.z.eval(*k1)))
          return verdict_refuted(
              "z is eventually increasing in coordinate " + std::to_string(c + 1), *k2,
              "z_" + std::to_string(*k1) + " = " + cert.z.eval(*k1).str() + ", z_" +
                  std::to_string(*k2) + " = " + cert.z.eval(*k2).str());
        return verdict_inconclusive("increasing tail suspected but no witness pair found");
      }
      bool infimum_positive =
          (t.limit == TailClass::Limit::Converges && t.limit_value.sign() > 0) ||
          t.limit == TailClass::Limit::DivergesPlus;
      if (infimum_positive) {
        auto k = first_member_geq(act, std::max(tail_from, finite_bound + 1), budget);
        if (k) {
          std::string floor = t.limit == TailClass::Limit::Converges
                                  ? "the tail limit " + t.limit_value.str()
                                  : "a diverging tail";
          return verdict_refuted(
              "the infimum of z over K is not 0: coordinate " + std::to_string(c + 1) +
                  " is nonincreasing toward " + floor,
              *k, "z_" + std::to_string(*k) + " = " + cert.z.eval(*k).str() +
                      "; every later K-element stays at or above the tail limit");
        }
        return verdict_inconclusive("no K-element found to witness the positive infimum");
      }
      if (t.limit == TailClass::Limit::DivergesMinus) {
        // Covered by the eventually-negative branch; reaching here means the
        // sign could not be certified.
        symbolic_block = "tail sign unresolved";
        break;
      }
    }
  }

  if (!density_ok)
    return verdict_inconclusive("density of K not exactly computable: " + render_density(dK));
  if (!symbolic_block.empty()) return verdict_inconclusive(symbolic_block);

  // Bridge the scanned prefix to the certified tail.
  if (last_v) {
    auto next = first_member_geq(K, p_end + 1, budget);
    if (!next) return verdict_inconclusive("no K-element found past the prefix");
    LatticeVector nv = cert.z.eval(*next);
    if (!leq(nv, *last_v))
      return verdict_refuted("z is not nonincreasing on K", *next,
                             "z_" + std::to_string(last_k) + " = " + last_v->str() + ", z_" +
                                 std::to_string(*next) + " = " + nv.str());
  }

  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "density 1, nonincreasing on K, infimum 0";
  v.evidence.emplace_back("density(K)", "1 (exact)");
  v.evidence.emplace_back("prefix_checked_to", std::to_string(p_end));
  v.evidence.emplace_back("prefix_elements", std::to_string(members));
  v.evidence.emplace_back("tail_monotone_from", std::to_string(tail_from));
  v.evidence.emplace_back("tail_limit", "0 in every coordinate");
  return v;
}

// ---- domination --------------------------------------------------------

struct DominationResult {
  enum class Status { Ok, Refuted, Unknown };
  Status status = Status::Unknown;
  std::string unknown_reason;
  long long witness = 0;
  std::string witness_detail;
  long long tail_from = 1;
};

bool dominated_at(const RuleSequence& x, const LatticeVector& limit, const RuleSequence& z,
                  long long n) {
  return leq(modulus(x.eval(n) - limit), z.eval(n));
}

std::string domination_detail(const RuleSequence& x, const LatticeVector& limit,
                              const RuleSequence& z, long long n) {
  return "|x_" + std::to_string(n) + " - limit| = " + modulus(x.eval(n) - limit).str() +
         ", z_" + std::to_string(n) + " = " + z.eval(n).str();
}

DominationResult check_domination(const RuleSequence& x, const LatticeVector& limit,
                                  const RuleSequence& z, const IndexSet& K, long long prefix_n,
                                  Budget& budget) {
  DominationResult out;

  // Exact prefix scan on K.
  for (long long n = 1; n <= prefix_n; ++n) {
    budget.charge(1, "domination prefix scan");
    if (!K.contains(n)) continue;
    if (!dominated_at(x, limit, z, n)) {
      out.status = DominationResult::Status::Refuted;
      out.witness = n;
      out.witness_detail = domination_detail(x, limit, z, n);
      return out;
    }
  }

  // Per-region symbolic tails.
  auto effx = x.effective_guards(), effz = z.effective_guards();
  const int dim = x.dim();
  std::string unknown;
  long long max_from = 1;
  for (size_t i = 0; i < effx.size(); ++i) {
    for (size_t j = 0; j < effz.size(); ++j) {
      IndexSet r =
          IndexSet::set_intersection(IndexSet::set_intersection(effx[i], effz[j]), K).simplified();
      if (r.kind() == IndexSet::Kind::Empty) continue;
      if (r.kind() == IndexSet::Kind::Finite) {
        for (long long e : r.elements()) {
          budget.charge(1, "finite region check");
          if (!dominated_at(x, limit, z, e)) {
            out.status = DominationResult::Status::Refuted;
            out.witness = e;
            out.witness_detail = domination_detail(x, limit, z, e);
            return out;
          }
        }
        continue;
      }
      long long region_from = 1;
      bool region_unknown = false, violated_tail = false;
      for (int c = 0; c < dim && !region_unknown; ++c) {
        TermExpr dx = x.pieces()[i].coords[static_cast<size_t>(c)] -
                      TermExpr::constant(limit[c]);
        const TermExpr& zc = z.pieces()[j].coords[static_cast<size_t>(c)];
        for (const TermExpr& h : {zc - dx, zc + dx}) {
          EventualSign ev = h.fn().eventual_sign();
          if (!ev.known) {
            region_unknown = true;
            unknown = "sign of " + h.str() + " unresolved on region " + r.str();
            break;
          }
          region_from = std::max(region_from, ev.from_n);
          if (ev.sign < 0) violated_tail = true;
        }
      }
      if (region_unknown) continue;  // another region may still refute outright
      if (violated_tail) {
        auto k = first_member_geq(r, std::max(region_from, prefix_n + 1), budget);
        while (k && dominated_at(x, limit, z, *k)) k = first_member_geq(r, *k + 1, budget);
        if (k) {
          out.status = DominationResult::Status::Refuted;
          out.witness = *k;
          out.witness_detail = domination_detail(x, limit, z, *k);
          return out;
        }
        unknown = "eventual violation on region " + r.str() + " but no witness found";
        continue;
      }
      if (region_from > std::max(prefix_n, kTransientCap)) {
        unknown = "domination transient too long on region " + r.str();
        continue;
      }
      for (long long n = prefix_n + 1; n < region_from; ++n) {
        budget.charge(1, "domination bridge scan");
        if (!r.contains(n)) continue;
        if (!dominated_at(x, limit, z, n)) {
          out.status = DominationResult::Status::Refuted;
          out.witness = n;
          out.witness_detail = domination_detail(x, limit, z, n);
          return out;
        }
      }
      max_from = std::max(max_from, region_from);
    }
  }
  if (!unknown.empty()) {
    out.status = DominationResult::Status::Unknown;
    out.unknown_reason = unknown;
    return out;
  }
  out.status = DominationResult::Status::Ok;
  out.tail_from = max_from;
  return out;
}

CheckVerdict check_dstat_impl(const DStatOrderCert& cert, const CheckOptions& opts,
                              bool natural_path) {
  if (cert.x.dim() != cert.limit.dim())
    throw DimensionMismatch(cert.x.dim(), cert.limit.dim());
  if (cert.x.dim() != cert.dominator.dim())
    throw DimensionMismatch(cert.x.dim(), cert.dominator.dim());
  if (natural_path && !(cert.pair == DeferredPair::natural()))
    throw Error("the statistical check is defined for the pair (0, n)");

  // (1) The dominator's own decrease certificate.
  CheckVerdict inner =
      check_decrease_impl({cert.dominator, cert.decrease_on(), cert.pair}, opts, natural_path);
  if (inner.kind == CheckVerdict::Kind::Refuted) {
    CheckVerdict v = verdict_refuted(
        "the dominator is not deferred statistically order decreasing: " + inner.reason,
        inner.witness, inner.witness_detail);
    merge_evidence(v, "decrease.", inner);
    return v;
  }
  if (inner.kind != CheckVerdict::Kind::Verified) {
    CheckVerdict v = verdict_inconclusive("dominator decrease undecided: " + inner.reason);
    merge_evidence(v, "decrease.", inner);
    return v;
  }

  // (2) delta_{p,q}(K) = 1 exactly.
  IndexSet K = cert.set.simplified();
  DensityResult dK = density_of(K, cert.pair, opts, natural_path);
  if (dK.exact() && dK.value != Rational(1)) {
    CheckVerdict v = verdict_refuted(
        "delta_{p,q}(K) = " + dK.value.str() + " (exact), not 1", std::nullopt,
        "density witness: the windowed densities converge to " + dK.value.str());
    v.evidence.emplace_back("density(K)", render_density(dK));
    return v;
  }
  if (!dK.exact()) {
    CheckVerdict v =
        verdict_inconclusive("density of K not exactly computable: " + render_density(dK));
    v.evidence.emplace_back("density(K)", render_density(dK));
    return v;
  }

  // (3) Domination on K.
  Budget budget(opts.budget_units);
  DominationResult dom;
  try {
    dom = check_domination(cert.x, cert.limit, cert.dominator, K, opts.prefix_n, budget);
  } catch (const BudgetExceeded&) {
    return verdict_inconclusive("budget exceeded during the domination check");
  }

  // Violation-set density, reported as evidence whenever it is expressible.
  std::vector<std::pair<std::string, std::string>> violation_evidence;
  if (auto vset = violation_set(cert.x, cert.limit, cert.dominator)) {
    DensityResult dv = density_of(*vset, cert.pair, opts, natural_path);
    violation_evidence.emplace_back("violation_set", vset->str());
    violation_evidence.emplace_back("violation_density", render_density(dv));
  }

  if (dom.status == DominationResult::Status::Refuted) {
    CheckVerdict v = verdict_refuted("domination |x_k - limit| <= z_k fails on K", dom.witness,
                                     dom.witness_detail);
    v.evidence = violation_evidence;
    return v;
  }
  if (dom.status == DominationResult::Status::Unknown) {
    CheckVerdict v = verdict_inconclusive("domination undecided: " + dom.unknown_reason);
    v.evidence = violation_evidence;
    return v;
  }

  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "dominator decreases on its witness set, delta(K) = 1, and |x_k - limit| <= z_k on K";
  v.evidence.emplace_back("density(K)", "1 (exact)");
  v.evidence.emplace_back("domination_prefix", std::to_string(opts.prefix_n));
  v.evidence.emplace_back("domination_tail_from", std::to_string(dom.tail_from));
  for (auto& e : violation_evidence) v.evidence.push_back(std::move(e));
  merge_evidence(v, "decrease.", inner);
  return v;
}

}  // namespace

// ---- public checkers ---------------------------------------------------

CheckVerdict check_decrease(const DecreaseCert& cert, const CheckOptions& opts) {
  return check_decrease_impl(cert, opts, false);
}

CheckVerdict check_order_conv(const OrderConvCert& cert, const CheckOptions& opts) {
  if (cert.x.dim() != cert.limit.dim())
    throw DimensionMismatch(cert.x.dim(), cert.limit.dim());
  if (cert.x.dim() != cert.dominator.dim())
    throw DimensionMismatch(cert.x.dim(), cert.dominator.dim());

  CheckVerdict inner = check_decrease_impl(
      {cert.dominator, IndexSet::all(), DeferredPair::natural()}, CheckOptions(opts), false);
  if (inner.kind == CheckVerdict::Kind::Refuted) {
    CheckVerdict v = verdict_refuted("the dominator is not nonincreasing to 0: " + inner.reason,
                                     inner.witness, inner.witness_detail);
    merge_evidence(v, "dominator.", inner);
    return v;
  }
  if (inner.kind != CheckVerdict::Kind::Verified) {
    CheckVerdict v = verdict_inconclusive("dominator undecided: " + inner.reason);
    merge_evidence(v, "dominator.", inner);
    return v;
  }

  Budget budget(opts.budget_units);
  DominationResult dom;
  try {
    dom = check_domination(cert.x, cert.limit, cert.dominator, IndexSet::all(), opts.prefix_n,
                           budget);
  } catch (const BudgetExceeded&) {
    return verdict_inconclusive("budget exceeded during the domination check");
  }
  if (dom.status == DominationResult::Status::Refuted)
    return verdict_refuted("domination |x_n - limit| <= y_n fails", dom.witness,
                           dom.witness_detail);
  if (dom.status == DominationResult::Status::Unknown)
    return verdict_inconclusive("domination undecided: " + dom.unknown_reason);

  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "dominator nonincreasing to 0 on N and |x_n - limit| <= y_n for all n";
  v.evidence.emplace_back("domination_prefix", std::to_string(opts.prefix_n));
  v.evidence.emplace_back("domination_tail_from", std::to_string(dom.tail_from));
  merge_evidence(v, "dominator.", inner);
  return v;
}

CheckVerdict check_dstat_order_conv(const DStatOrderCert& cert, const CheckOptions& opts) {
  return check_dstat_impl(cert, opts, false);
}

CheckVerdict check_stat_order_conv(const DStatOrderCert& cert, const CheckOptions& opts) {
  return check_dstat_impl(cert, opts, true);
}

DStatOrderCert lift_order_cert(const OrderConvCert& cert, const DeferredPair& pair) {
  return {cert.x, cert.limit, cert.dominator, IndexSet::all(), pair, IndexSet::all()};
}

DStatOrderCert derive_linear_cert(const DStatOrderCert& a, const DStatOrderCert& b,
                                  const Rational& la, const Rational& mu) {
  if (!(a.pair == b.pair)) throw Error("certificates use different deferred pairs");
  if (a.x.dim() != b.x.dim()) throw DimensionMismatch(a.x.dim(), b.x.dim());
  RuleSequence x = pointwise_linear(la, a.x, mu, b.x);
  LatticeVector limit = la * a.limit + mu * b.limit;
  RuleSequence z = pointwise_linear(abs(la), a.dominator, abs(mu), b.dominator);
  IndexSet k = IndexSet::set_intersection(a.set, b.set).simplified();
  IndexSet m = IndexSet::set_intersection(a.decrease_on(), b.decrease_on()).simplified();
  return {std::move(x), std::move(limit), std::move(z), std::move(k), a.pair, std::move(m)};
}

DStatOrderCert derive_lattice_cert(const DStatOrderCert& a, const DStatOrderCert& b,
                                   LatticeCertOp op) {
  switch (op) {
    case LatticeCertOp::Join:
    case LatticeCertOp::Meet: {
      if (!(a.pair == b.pair)) throw Error("certificates use different deferred pairs");
      if (a.x.dim() != b.x.dim()) throw DimensionMismatch(a.x.dim(), b.x.dim());
      LatticeOp lop = op == LatticeCertOp::Join ? LatticeOp::Join : LatticeOp::Meet;
      RuleSequence x = pointwise_lattice(a.x, b.x, lop);
      LatticeVector limit =
          op == LatticeCertOp::Join ? join(a.limit, b.limit) : meet(a.limit, b.limit);
      RuleSequence z = pointwise_linear(Rational(1), a.dominator, Rational(1), b.dominator);
      IndexSet k = IndexSet::set_intersection(a.set, b.set).simplified();
      IndexSet m = IndexSet::set_intersection(a.decrease_on(), b.decrease_on()).simplified();
      return {std::move(x), std::move(limit), std::move(z), std::move(k), a.pair, std::move(m)};
    }
    case LatticeCertOp::Pos:
      return {pointwise_positive_part(a.x), positive_part(a.limit), a.dominator, a.set, a.pair,
              a.decrease_on()};
    case LatticeCertOp::Neg:
      return {pointwise_negative_part(a.x), negative_part(a.limit), a.dominator, a.set, a.pair,
              a.decrease_on()};
    case LatticeCertOp::Abs:
      return {pointwise_modulus(a.x), modulus(a.limit), a.dominator, a.set, a.pair,
              a.decrease_on()};
  }
  throw Error("unknown lattice operation");
}

CheckVerdict uniqueness_probe(const DStatOrderCert& a, const DStatOrderCert& b,
                              const CheckOptions& opts) {
  if (!(a.x == b.x))
    return verdict_precondition("the certificates are for different sequences");
  CheckVerdict va = check_dstat_order_conv(a, opts);
  if (!va.verified())
    return verdict_precondition("first certificate does not verify: " + va.reason);
  CheckVerdict vb = check_dstat_order_conv(b, opts);
  if (!vb.verified())
    return verdict_precondition("second certificate does not verify: " + vb.reason);

  if (a.limit == b.limit) {
    CheckVerdict v;
    v.kind = CheckVerdict::Kind::Verified;
    v.reason = "the limits agree";
    v.evidence.emplace_back("limit", a.limit.str());
    return v;
  }
  LatticeVector w = modulus(a.limit - b.limit);
  IndexSet s = IndexSet::set_intersection(a.set, b.set).simplified();
  Budget budget(opts.budget_units);
  try {
    for (long long n = 1; n <= kScanCap; ++n) {
      budget.charge(1, "uniqueness scan");
      if (!s.contains(n)) continue;
      LatticeVector sum = a.dominator.eval(n) + b.dominator.eval(n);
      if (!leq(w, sum))
        return verdict_refuted(
            "two distinct limits for the same sequence", n,
            "|limit_a - limit_b| = " + w.str() + " but z_a(j) + z_b(j) = " + sum.str() +
                " at j = " + std::to_string(n) +
                ", contradicting |limit_a - limit_b| <= z_a(j) + z_b(j)");
    }
  } catch (const BudgetExceeded&) {
  }
  return verdict_inconclusive("no separating index found within budget");
}

CheckVerdict monotone_order_check(const DStatOrderCert& cert, const CheckOptions& opts) {
  CheckVerdict inner = check_dstat_order_conv(cert, opts);
  if (!inner.verified())
    return verdict_precondition("certificate does not verify: " + inner.reason);
  const RuleSequence& x = cert.x;
  const int dim = x.dim();

  // Certify the direction on the tail.
  auto effs = x.effective_guards();
  std::vector<size_t> active;
  for (size_t i = 0; i < effs.size(); ++i) {
    auto k = effs[i].kind();
    if (k != IndexSet::Kind::Empty && k != IndexSet::Kind::Finite) active.push_back(i);
  }
  bool one_rule = !active.empty();
  for (size_t k = 1; k < active.size(); ++k)
    if (x.pieces()[active[k]].coords != x.pieces()[active[0]].coords) one_rule = false;

  bool any_up = false, any_down = false;
  long long tail_from = 1;
  std::vector<TailClass> tails;
  if (one_rule) {
    for (int c = 0; c < dim; ++c) {
      TailClass t = tail_class(x.pieces()[active[0]].coords[static_cast<size_t>(c)]);
      if (t.monotone == TailClass::Monotone::Unknown)
        return verdict_inconclusive("tail monotonicity unresolved in coordinate " +
                                    std::to_string(c + 1));
      if (t.monotone == TailClass::Monotone::NonDecreasing) any_up = true;
      if (t.monotone == TailClass::Monotone::NonIncreasing) any_down = true;
      tail_from = std::max(tail_from, t.from_n);
      tails.push_back(std::move(t));
    }
    if (any_up && any_down) {
      long long k1 = tail_from, k2 = tail_from + 1;
      return verdict_precondition(
          "x is not monotone: coordinates move in opposite directions", k2,
          "x_" + std::to_string(k1) + " = " + x.eval(k1).str() + " and x_" + std::to_string(k2) +
              " = " + x.eval(k2).str() + " are incomparable");
    }
    if (tail_from > 1'000'000)
      return verdict_inconclusive("monotone transient too long");
  }

  // Exact prefix scan with direction detection.
  long long p_end = std::max(opts.prefix_n, tail_from);
  int dir = any_up ? 1 : (any_down ? -1 : 0);
  Budget budget(opts.budget_units);
  LatticeVector prev = x.eval(1);
  try {
    for (long long n = 1; n < p_end; ++n) {
      budget.charge(1, "monotone prefix scan");
      LatticeVector cur = x.eval(n + 1);
      OrderRelation rel = compare(prev, cur);
      int step = 0;
      if (rel == OrderRelation::Less) step = 1;
      if (rel == OrderRelation::Greater) step = -1;
      if (rel == OrderRelation::Incomparable)
        return verdict_precondition(
            "x is not monotone", n + 1,
            "x_" + std::to_string(n) + " = " + prev.str() + " and x_" + std::to_string(n + 1) +
                " = " + cur.str() + " are incomparable");
      if (step != 0) {
        if (dir == 0) dir = step;
        if (step != dir)
          return verdict_precondition(
              "x is not monotone: the direction reverses", n + 1,
              "x_" + std::to_string(n) + " = " + prev.str() + ", x_" + std::to_string(n + 1) +
                  " = " + cur.str());
      }
      prev = std::move(cur);
    }
  } catch (const BudgetExceeded&) {
    return verdict_inconclusive("budget exceeded during the monotonicity scan");
  }

  // Without a single tail rule the scan can only refute, never certify.
  if (!one_rule)
    return verdict_inconclusive("piecewise structure too complex to certify monotonicity");

  // A monotone sequence order-converges to its tail limit, which must be the
  // certified limit.
  for (int c = 0; c < dim; ++c) {
    const TailClass& t = tails[static_cast<size_t>(c)];
    if (t.limit != TailClass::Limit::Converges)
      return verdict_inconclusive("x diverges in coordinate " + std::to_string(c + 1));
    if (t.limit_value != cert.limit[c])
      return verdict_refuted(
          "the tail limit differs from the certified limit in coordinate " + std::to_string(c + 1),
          std::nullopt,
          "tail limit " + t.limit_value.str() + " vs certificate " + cert.limit[c].str());
  }

  RuleSequence y = [&] {
    return pointwise_modulus(pointwise_shift(x, -cert.limit));
  }();
  CheckVerdict oc = check_order_conv({x, cert.limit, y}, opts);
  CheckVerdict v = oc;
  v.evidence.clear();
  v.evidence.emplace_back("monotone", dir >= 0 ? "nondecreasing" : "nonincreasing");
  v.evidence.emplace_back("dominator", "|x_n - limit|");
  for (auto& e : oc.evidence) v.evidence.push_back(std::move(e));
  return v;
}

CheckVerdict subsequence_check(const DStatOrderCert& cert, const IndexSet& kprime,
                               const CheckOptions& opts) {
  CheckVerdict inner = check_dstat_order_conv(cert, opts);
  if (!inner.verified())
    return verdict_precondition("certificate does not verify: " + inner.reason);

  DensityResult d1 = deferred_density(kprime.simplified(), cert.pair, opts.n_max,
                                      opts.budget_units);
  std::optional<Rational> liminf;
  if (d1.exact()) liminf = d1.value;
  else if (d1.is(DensityResult::Kind::NoLimit)) liminf = d1.cluster_lo;
  if (!liminf) {
    CheckVerdict v = verdict_inconclusive("liminf of the windowed density of K' is not exactly "
                                          "computable");
    v.evidence.emplace_back("density(K')", render_density(d1));
    return v;
  }
  if (liminf->is_zero()) {
    CheckVerdict v = verdict_inconclusive("liminf of the windowed density of K' is 0");
    v.evidence.emplace_back("liminf(K')", "0 (exact)");
    return v;
  }

  IndexSet bad = IndexSet::set_intersection(kprime, IndexSet::complement(cert.set)).simplified();
  DensityResult d2 = deferred_density(bad, cert.pair, opts.n_max, opts.budget_units);
  if (!(d2.exact() && d2.value.is_zero())) {
    CheckVerdict v = verdict_inconclusive(
        "the share of K' outside the witness set is not exactly density 0");
    v.evidence.emplace_back("density(K' \\ K)", render_density(d2));
    return v;
  }

  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "K' has positive windowed liminf and its violations sit inside a density-0 set";
  v.evidence.emplace_back("liminf(K')", liminf->str() + " (exact)");
  v.evidence.emplace_back("density(K' \\ K)", "0 (exact)");
  v.evidence.emplace_back("violation_ratio_limit", "0 = 0 / " + liminf->str());
  return v;
}

CheckVerdict stat_implies_deferred_check(const DStatOrderCert& cert, const DeferredPair& target,
                                         const CheckOptions& opts) {
  if (!(cert.pair == DeferredPair::natural()))
    return verdict_precondition("the certificate must use the natural pair (0, n)");
  CheckVerdict base = check_stat_order_conv(cert, opts);
  if (!base.verified())
    return verdict_precondition("certificate does not verify statistically: " + base.reason);
  RatioBound rb = ratio_bounded(target);
  if (!rb.bounded)
    return verdict_precondition("p_n / (q_n - p_n) is unbounded for the target pair " +
                                target.str());
  DStatOrderCert retargeted = cert;
  retargeted.pair = target;
  CheckVerdict v = check_dstat_order_conv(retargeted, opts);
  v.evidence.insert(v.evidence.begin(), {"ratio_supremum", rb.supremum.str()});
  return v;
}

CheckVerdict ideal_check(const DStatOrderCert& cert, const OrderIdeal& ideal,
                         const CheckOptions& opts) {
  if (ideal.dim() != cert.x.dim()) throw DimensionMismatch(ideal.dim(), cert.x.dim());
  CheckVerdict inner = check_dstat_order_conv(cert, opts);
  if (!inner.verified())
    return verdict_precondition("certificate does not verify: " + inner.reason);
  if (!(cert.limit == LatticeVector::zero(cert.x.dim())))
    return verdict_precondition("the ideal transfer is stated for limit 0");

  Budget budget(opts.budget_units);
  struct Named { const RuleSequence& seq; const char* name; };
  for (const Named& s : {Named{cert.x, "x"}, Named{cert.dominator, "z"}}) {
    auto effs = s.seq.effective_guards();
    for (size_t i = 0; i < effs.size(); ++i) {
      if (effs[i].kind() == IndexSet::Kind::Empty) continue;
      for (int c = 0; c < s.seq.dim(); ++c) {
        if (ideal.support().count(c + 1)) continue;
        const TermExpr& e = s.seq.pieces()[i].coords[static_cast<size_t>(c)];
        if (e.fn().is_zero()) continue;
        std::optional<long long> witness;
        if (effs[i].kind() == IndexSet::Kind::Finite) {
          for (long long el : effs[i].elements())
            if (!e.eval(el).is_zero()) { witness = el; break; }
        } else {
          try {
            for (long long n = 1; n <= kScanCap && !witness; ++n) {
              budget.charge(1, "ideal witness scan");
              if (effs[i].contains(n) && !e.eval(n).is_zero()) witness = n;
            }
          } catch (const BudgetExceeded&) {
            return verdict_inconclusive("budget exceeded while hunting an ideal violation");
          }
        }
        if (witness)
          return verdict_refuted(
              std::string(s.name) + " leaves the ideal " + ideal.str(), *witness,
              std::string(s.name) + "_" + std::to_string(*witness) + " has coordinate " +
                  std::to_string(c + 1) + " = " + e.eval(*witness).str());
      }
    }
  }
  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "every term and dominator value lies in the ideal; the certificate holds in the "
             "ideal and the ambient space simultaneously";
  v.evidence.emplace_back("ideal", ideal.str());
  return v;
}

std::vector<CheckVerdict> class_membership(const RuleSequence& x, const RuleSequence& z,
                                           const DeferredPair& pair,
                                           const std::vector<LatticeVector>& candidates,
                                           const std::optional<IndexSet>& decrease_set,
                                           const CheckOptions& opts) {
  IndexSet m = decrease_set ? decrease_set->simplified() : IndexSet::all();
  CheckVerdict pre = check_decrease({z, m, pair}, opts);
  std::vector<CheckVerdict> out;
  out.reserve(candidates.size());
  for (const LatticeVector& l : candidates) {
    if (l.dim() != x.dim()) throw DimensionMismatch(l.dim(), x.dim());
    if (!pre.verified()) {
      out.push_back(verdict_precondition(
          "the dominator lacks a verified decrease certificate: " + pre.reason));
      continue;
    }
    auto vset = violation_set(x, l, z);
    if (!vset) {
      out.push_back(verdict_inconclusive("violation set not expressible in the set algebra"));
      continue;
    }
    DensityResult dv = deferred_density(*vset, pair, opts.n_max, opts.budget_units);
    if (dv.exact() && !dv.value.is_zero()) {
      Budget budget(opts.budget_units);
      auto w = first_member_geq(*vset, 1, budget);
      CheckVerdict v = verdict_refuted(
          "the violation set has density " + dv.value.str() + ", so no density-1 set avoids it",
          w, w ? domination_detail(x, l, z, *w) : std::string());
      v.evidence.emplace_back("violation_set", vset->str());
      v.evidence.emplace_back("violation_density", render_density(dv));
      out.push_back(std::move(v));
      continue;
    }
    if (!dv.exact()) {
      CheckVerdict v = verdict_inconclusive("violation-set density not exactly computable");
      v.evidence.emplace_back("violation_set", vset->str());
      v.evidence.emplace_back("violation_density", render_density(dv));
      out.push_back(std::move(v));
      continue;
    }
    DStatOrderCert cert{x, l, z, IndexSet::complement(*vset).simplified(), pair, m};
    CheckVerdict v = check_dstat_order_conv(cert, opts);
    v.evidence.insert(v.evidence.begin(), {"violation_set", vset->str()});
    out.push_back(std::move(v));
  }
  return out;
}

CheckVerdict equal_mod_null_transfer(const RuleSequence& x, const RuleSequence& y,
                                     const DStatOrderCert& cert_y, const CheckOptions& opts) {
  if (!(cert_y.x == y)) return verdict_precondition("the certificate is not for y");
  if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
  CheckVerdict inner = check_dstat_order_conv(cert_y, opts);
  if (!inner.verified())
    return verdict_precondition("certificate for y does not verify: " + inner.reason);

  // Disagreement set {n : x_n != y_n}, exact from the piece structure.
  auto effx = x.effective_guards(), effy = y.effective_guards();
  std::vector<IndexSet> parts;
  for (size_t i = 0; i < effx.size(); ++i) {
    for (size_t j = 0; j < effy.size(); ++j) {
      IndexSet r = IndexSet::set_intersection(effx[i], effy[j]).simplified();
      if (r.kind() == IndexSet::Kind::Empty) continue;
      std::vector<TermExpr> diffs;
      for (int c = 0; c < x.dim(); ++c) {
        TermExpr g = x.pieces()[i].coords[static_cast<size_t>(c)] -
                     y.pieces()[j].coords[static_cast<size_t>(c)];
        if (!g.fn().is_zero()) diffs.push_back(std::move(g));
      }
      if (diffs.empty()) continue;  // the region agrees identically
      auto roots = diffs.front().fn().num().integer_roots_geq1();
      if (!roots)
        return verdict_inconclusive("the disagreement set is not certifiable (root scan cap)");
      std::vector<long long> agree;
      for (long long rt : *roots) {
        if (!r.contains(rt)) continue;
        bool all_zero = true;
        for (const auto& g : diffs)
          if (!g.eval(rt).is_zero()) { all_zero = false; break; }
        if (all_zero) agree.push_back(rt);
      }
      parts.push_back(agree.empty()
                          ? r
                          : IndexSet::set_intersection(
                                r, IndexSet::complement(IndexSet::finite(agree))).simplified());
    }
  }
  IndexSet disagreement = IndexSet::empty();
  for (const auto& p : parts) disagreement = IndexSet::set_union(disagreement, p);
  disagreement = disagreement.simplified();

  DensityResult dd = deferred_density(disagreement, cert_y.pair, opts.n_max, opts.budget_units);
  if (dd.exact() && !dd.value.is_zero()) {
    Budget budget(opts.budget_units);
    auto w = first_member_geq(disagreement, 1, budget);
    CheckVerdict v = verdict_refuted(
        "x and y differ on a set of density " + dd.value.str(), w,
        w ? "x_" + std::to_string(*w) + " = " + x.eval(*w).str() + ", y_" + std::to_string(*w) +
                " = " + y.eval(*w).str()
          : std::string());
    v.evidence.emplace_back("disagreement_set", disagreement.str());
    v.evidence.emplace_back("disagreement_density", render_density(dd));
    return v;
  }
  if (!dd.exact()) {
    CheckVerdict v = verdict_inconclusive("disagreement density not exactly computable");
    v.evidence.emplace_back("disagreement_set", disagreement.str());
    v.evidence.emplace_back("disagreement_density", render_density(dd));
    return v;
  }

  DStatOrderCert cert_x{x, cert_y.limit, cert_y.dominator,
                        IndexSet::set_intersection(cert_y.set,
                                                   IndexSet::complement(disagreement)).simplified(),
                        cert_y.pair, cert_y.decrease_on()};
  CheckVerdict v = check_dstat_order_conv(cert_x, opts);
  v.evidence.insert(v.evidence.begin(), {"disagreement_density", "0 (exact)"});
  v.evidence.insert(v.evidence.begin(), {"disagreement_set", disagreement.str()});
  return v;
}

CheckVerdict order_preservation_check(const DStatOrderCert& a, const DStatOrderCert& b,
                                      const CheckOptions& opts) {
  if (a.x.dim() != b.x.dim()) throw DimensionMismatch(a.x.dim(), b.x.dim());
  CheckVerdict va = check_dstat_order_conv(a, opts);
  if (!va.verified())
    return verdict_precondition("first certificate does not verify: " + va.reason);
  CheckVerdict vb = check_dstat_order_conv(b, opts);
  if (!vb.verified())
    return verdict_precondition("second certificate does not verify: " + vb.reason);

  Budget budget(opts.budget_units);
  auto premise_detail = [&](long long n) {
    return "x_" + std::to_string(n) + " = " + a.x.eval(n).str() + ", y_" + std::to_string(n) +
           " = " + b.x.eval(n).str();
  };
  try {
    for (long long n = 1; n <= opts.prefix_n; ++n) {
      budget.charge(1, "order premise scan");
      if (!leq(b.x.eval(n), a.x.eval(n)))
        return verdict_precondition("the premise x_n >= y_n fails", n, premise_detail(n));
    }
    auto effa = a.x.effective_guards(), effb = b.x.effective_guards();
    for (size_t i = 0; i < effa.size(); ++i) {
      for (size_t j = 0; j < effb.size(); ++j) {
        IndexSet r = IndexSet::set_intersection(effa[i], effb[j]).simplified();
        if (r.kind() == IndexSet::Kind::Empty) continue;
        if (r.kind() == IndexSet::Kind::Finite) {
          for (long long e : r.elements())
            if (!leq(b.x.eval(e), a.x.eval(e)))
              return verdict_precondition("the premise x_n >= y_n fails", e, premise_detail(e));
          continue;
        }
        long long from = 1;
        for (int c = 0; c < a.x.dim(); ++c) {
          TermExpr h = a.x.pieces()[i].coords[static_cast<size_t>(c)] -
                       b.x.pieces()[j].coords[static_cast<size_t>(c)];
          EventualSign ev = h.fn().eventual_sign();
          if (!ev.known)
            return verdict_inconclusive("the premise sign is unresolved on region " + r.str());
          if (ev.sign < 0) {
            auto k = first_member_geq(r, std::max(ev.from_n, opts.prefix_n + 1), budget);
            if (k)
              return verdict_precondition("the premise x_n >= y_n fails eventually", *k,
                                          premise_detail(*k));
            return verdict_inconclusive("eventual premise violation suspected, no witness found");
          }
          from = std::max(from, ev.from_n);
        }
        if (from > std::max(opts.prefix_n, kTransientCap))
          return verdict_inconclusive("premise transient too long on region " + r.str());
        for (long long n = opts.prefix_n + 1; n < from; ++n) {
          budget.charge(1, "order premise bridge");
          if (r.contains(n) && !leq(b.x.eval(n), a.x.eval(n)))
            return verdict_precondition("the premise x_n >= y_n fails", n, premise_detail(n));
        }
      }
    }
  } catch (const BudgetExceeded&) {
    return verdict_inconclusive("budget exceeded during the premise scan");
  }

  if (!leq(b.limit, a.limit))
    return verdict_refuted("the limits violate order preservation", std::nullopt,
                           "limit_a = " + a.limit.str() + ", limit_b = " + b.limit.str());
  CheckVerdict v;
  v.kind = CheckVerdict::Kind::Verified;
  v.reason = "x_n >= y_n for all n and limit_a >= limit_b";
  v.evidence.emplace_back("limit_a", a.limit.str());
  v.evidence.emplace_back("limit_b", b.limit.str());
  return v;
}

std::optional<IndexSet> violation_set(const RuleSequence& x, const LatticeVector& limit,
                                      const RuleSequence& z) {
  if (x.dim() != limit.dim()) throw DimensionMismatch(x.dim(), limit.dim());
  if (x.dim() != z.dim()) throw DimensionMismatch(x.dim(), z.dim());
  auto effx = x.effective_guards(), effz = z.effective_guards();
  std::vector<IndexSet> parts;
  auto violated_at = [&](const IndexSet& r, long long n) {
    return r.contains(n) && !leq(modulus(x.eval(n) - limit), z.eval(n));
  };
  for (size_t i = 0; i < effx.size(); ++i) {
    for (size_t j = 0; j < effz.size(); ++j) {
      IndexSet r = IndexSet::set_intersection(effx[i], effz[j]).simplified();
      if (r.kind() == IndexSet::Kind::Empty) continue;
      if (r.kind() == IndexSet::Kind::Finite) {
        std::vector<long long> bad;
        for (long long e : r.elements())
          if (violated_at(r, e)) bad.push_back(e);
        if (!bad.empty()) parts.push_back(IndexSet::finite(bad));
        continue;
      }
      long long from = 1;
      bool tail_violates = false;
      for (int c = 0; c < x.dim(); ++c) {
        TermExpr dx = x.pieces()[i].coords[static_cast<size_t>(c)] - TermExpr::constant(limit[c]);
        const TermExpr& zc = z.pieces()[j].coords[static_cast<size_t>(c)];
        for (const TermExpr& h : {dx - zc, (-dx) - zc}) {  // violation: h > 0 strictly
          EventualSign ev = h.fn().eventual_sign();
          if (!ev.known) return std::nullopt;
          from = std::max(from, ev.from_n);
          if (ev.sign > 0) tail_violates = true;
        }
      }
      if (from > kTransientCap) return std::nullopt;
      std::vector<long long> bad;
      for (long long n = 1; n < from; ++n)
        if (violated_at(r, n)) bad.push_back(n);
      if (tail_violates) {
        IndexSet tail = r;
        if (from > 1) {
          std::vector<long long> head;
          head.reserve(static_cast<size_t>(from - 1));
          for (long long n = 1; n < from; ++n) head.push_back(n);
          tail = IndexSet::set_intersection(r, IndexSet::complement(IndexSet::finite(head)));
        }
        parts.push_back(bad.empty() ? tail
                                    : IndexSet::set_union(tail, IndexSet::finite(bad)));
      } else if (!bad.empty()) {
        parts.push_back(IndexSet::finite(bad));
      }
    }
  }
  IndexSet out = IndexSet::empty();
  for (const auto& p : parts) out = IndexSet::set_union(out, p);
  return out.simplified();
}

FalsifyReport falsify_with_whitelist(const RuleSequence& x, const LatticeVector& limit,
                                     const DeferredPair& pair, const CheckOptions& opts) {
  FalsifyReport report;
  report.label = "bounded falsification: dominator whitelist c/n^e, e in {1,2,3}, c in {1,...,10};"
                 " dominators outside the whitelist are not addressed";
  report.all_eliminated = true;
  for (int e = 1; e <= 3; ++e) {
    for (int c = 1; c <= 10; ++c) {
      TermExpr dom = TermExpr::constant(Rational(c)) / TermExpr::variable().pow(e);
      std::vector<TermExpr> coords(static_cast<size_t>(x.dim()), dom);
      RuleSequence z(x.dim(), {{IndexSet::all(), std::move(coords)}});
      FalsifyCandidate cand;
      cand.dominator = dom.str();
      auto vset = violation_set(x, limit, z);
      if (!vset) {
        cand.exceedance.kind = DensityResult::Kind::Inconclusive;
        cand.exceedance.note = "violation set not expressible";
        cand.eliminated = false;
      } else {
        cand.exceedance = deferred_density(*vset, pair, opts.n_max, opts.budget_units);
        cand.eliminated = cand.exceedance.exact() && cand.exceedance.value.sign() > 0;
      }
      report.all_eliminated = report.all_eliminated && cand.eliminated;
      report.candidates.push_back(std::move(cand));
    }
  }
  return report;
}

}  // namespace latconv
