#include "latconv/theorems.hpp"

#include <algorithm>
#include <set>

#include "latconv/errors.hpp"

namespace latconv {

namespace gen {

Rng::Rng(long long seed, unsigned long long salt)
    : state(static_cast<unsigned long long>(seed) * 0x9e3779b97f4a7c15ull + salt) {}

unsigned long long Rng::next() {  // splitmix64
  unsigned long long z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

long long Rng::range(long long lo, long long hi) {
  return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
}

Rational rand_rational(Rng& rng, long long mag, long long den_cap) {
  return Rational{BigInt(rng.range(-mag, mag)), BigInt(rng.range(1, den_cap))};
}

LatticeVector rand_vector(Rng& rng, int dim, long long mag, long long den_cap) {
  std::vector<Rational> coords;
  coords.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) coords.push_back(rand_rational(rng, mag, den_cap));
  return LatticeVector(std::move(coords));
}

IndexSet rand_set(Rng& rng, int depth) {
  long long pick = depth <= 0 ? rng.range(0, 4) : rng.range(0, 7);
  switch (pick) {
    case 0: return IndexSet::all();
    case 1: return IndexSet::empty();
    case 2: {
      long long c = rng.range(1, 12);
      return IndexSet::ap(c, rng.range(0, c - 1));
    }
    case 3: return IndexSet::power(static_cast<int>(rng.range(2, 5)));
    case 4: {
      std::set<long long> elems;
      long long count = rng.range(1, 10);
      for (long long i = 0; i < count; ++i) elems.insert(rng.range(1, 1'000'000));
      return IndexSet::finite({elems.begin(), elems.end()});
    }
    case 5: return IndexSet::complement(rand_set(rng, depth - 1));
    case 6: return IndexSet::set_union(rand_set(rng, depth - 1), rand_set(rng, depth - 1));
    default:
      return IndexSet::set_intersection(rand_set(rng, depth - 1), rand_set(rng, depth - 1));
  }
}

DStatOrderCert rand_base_cert(Rng& rng, int dim, const DeferredPair& pair) {
  long long kchoice = rng.range(0, 2);
  IndexSet k = IndexSet::all();
  if (kchoice == 1) {
    k = IndexSet::complement(IndexSet::power(static_cast<int>(rng.range(2, 4))));
  } else if (kchoice == 2) {
    std::set<long long> elems;
    long long count = rng.range(1, 6);
    for (long long i = 0; i < count; ++i) elems.insert(rng.range(1, 60));
    k = IndexSet::complement(IndexSet::finite({elems.begin(), elems.end()}));
  }
  LatticeVector limit = rand_vector(rng, dim, 10, 12);
  std::vector<TermExpr> zc;
  for (int c = 0; c < dim; ++c) {
    TermExpr num = TermExpr::constant(Rational(BigInt(rng.range(1, 9))));
    zc.push_back(num / TermExpr::variable().pow(static_cast<int>(rng.range(1, 2))));
  }
  RuleSequence z(dim, {{IndexSet::all(), zc}});
  Rational alpha{BigInt(rng.range(-9, 9)), BigInt(10)};
  std::vector<TermExpr> xc;
  for (int c = 0; c < dim; ++c)
    xc.push_back(TermExpr::constant(limit[c]) +
                 TermExpr::constant(alpha) * zc[static_cast<std::size_t>(c)]);
  std::vector<SeqPiece> pieces;
  if (k.kind() != IndexSet::Kind::All) {
    std::vector<TermExpr> junk;
    for (int c = 0; c < dim; ++c)
      junk.push_back(TermExpr::variable() +
                     TermExpr::constant(Rational(BigInt(rng.range(0, 5)))));
    pieces.push_back({IndexSet::complement(k), std::move(junk)});
  }
  pieces.push_back({IndexSet::all(), std::move(xc)});
  return {RuleSequence(dim, std::move(pieces)), std::move(limit), std::move(z), std::move(k),
          pair, IndexSet::all()};
}

CheckOptions sweep_options() { return {2'000, 50'000, Budget::kDefault}; }

}  // namespace gen

namespace {

using gen::Rng;

void record(TheoremResult& r, bool ok, const std::string& what) {
  if (ok) {
    ++r.passes;
  } else if (r.failures.size() < 5) {
    r.failures.push_back(what);
  }
}

int cycle_dim(int t, std::initializer_list<int> dims) {
  return *(dims.begin() + static_cast<std::size_t>(t) % dims.size());
}

/// The cube-indexed decrease example: big spikes on cubes, 1/n^2 off them.
RuleSequence cube_decrease_seq() {
  TermExpr zero = TermExpr::constant(Rational(0));
  TermExpr sq = TermExpr::variable().pow(2);
  TermExpr inv_sq = TermExpr::constant(Rational(1)) / TermExpr::variable().pow(2);
  return RuleSequence(2, {{IndexSet::power(3), {zero, sq}}, {IndexSet::all(), {zero, inv_sq}}});
}

DStatOrderCert cube_dstat_cert() {
  TermExpr zero = TermExpr::constant(Rational(0));
  TermExpr sq = TermExpr::variable().pow(2);
  TermExpr inv = TermExpr::constant(Rational(1)) / TermExpr::variable();
  TermExpr two_inv = TermExpr::constant(Rational(2)) / TermExpr::variable();
  TermExpr lin = TermExpr::variable();
  RuleSequence x(2, {{IndexSet::power(3), {zero, lin}}, {IndexSet::all(), {zero, inv}}});
  RuleSequence z(2, {{IndexSet::power(3), {zero, sq}}, {IndexSet::all(), {zero, two_inv}}});
  return {std::move(x), LatticeVector({Rational(0), Rational(0)}), std::move(z),
          IndexSet::complement(IndexSet::power(3)), DeferredPair::natural(), std::nullopt};
}

}  // namespace

TheoremResult riesz_identity_sweep(long long seed, int trials) {
  TheoremResult r{"riesz-identities", trials, 0, {}};
  Rng rng(seed, 0xa11ce5ULL);
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2, 5});
    LatticeVector x = gen::rand_vector(rng, dim, 30, 15), y = gen::rand_vector(rng, dim, 30, 15);
    LatticeVector a = gen::rand_vector(rng, dim, 30, 15), b = gen::rand_vector(rng, dim, 30, 15);
    bool ok = join(x, y) + meet(x, y) == x + y;
    ok = ok && modulus(x) == positive_part(x) + negative_part(x);
    ok = ok && x == positive_part(x) - negative_part(x);
    ok = ok && meet(positive_part(x), negative_part(x)) == LatticeVector::zero(dim);
    ok = ok && leq(modulus(x + y), modulus(x) + modulus(y));
    ok = ok && leq(modulus(join(x, y) - join(a, b)), modulus(x - a) + modulus(y - b));
    record(r, ok, "identity failed for x = " + x.str() + ", y = " + y.str());
  }
  return r;
}

TheoremResult density_oracle_sweep(long long seed, int trials) {
  TheoremResult r{"density-oracle", trials, 0, {}};
  Rng rng(seed, 0xdeb5e7ULL);
  for (int t = 0; t < trials; ++t) {
    IndexSet s = gen::rand_set(rng, 3);
    long long lo = rng.range(0, 1'000'000);
    long long hi = lo + rng.range(1, 100'000);
    long long oracle = 0;
    for (long long k = lo + 1; k <= hi; ++k)
      if (s.contains(k)) ++oracle;
    Budget budget;
    long long got = s.count_window(lo, hi, budget).count;
    record(r, got == oracle,
           s.str() + " window (" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " +
               std::to_string(got) + " vs oracle " + std::to_string(oracle));
  }
  return r;
}

TheoremResult cube_example_instance() {
  TheoremResult r{"cube-decrease-example", 3, 0, {}};
  RuleSequence zc = cube_decrease_seq();
  IndexSet k = IndexSet::complement(IndexSet::power(3));
  CheckOptions opts = gen::sweep_options();

  CheckVerdict guarded = check_decrease({zc, k, DeferredPair::natural()}, opts);
  record(r, guarded.verified(), "guarded decrease: " + guarded.reason);

  CheckVerdict unguarded = check_decrease({zc, IndexSet::all(), DeferredPair::natural()}, opts);
  bool refuted_at_cube = unguarded.kind == CheckVerdict::Kind::Refuted && unguarded.witness &&
                         *unguarded.witness == 8;
  record(r, refuted_at_cube, "unguarded decrease: " + unguarded.reason);

  CheckVerdict conv = check_dstat_order_conv(cube_dstat_cert(), opts);
  record(r, conv.verified(), "cube dstat certificate: " + conv.reason);
  return r;
}

TheoremResult flagged_example_instance() {
  TheoremResult r{"flagged-pair-example", 3, 0, {}};
  auto v = DeferredPair::violation({4, 0}, {2, 0});
  record(r, v && v->condition == "p_n < q_n for all n >= 1" && v->at_n == 1,
         "pair (4n, 2n) not rejected as printed");

  // Under the swapped, valid pair the sequence still diverges in order: every
  // whitelisted dominator is overtaken on a density-1 set.
  TermExpr zero = TermExpr::constant(Rational(0));
  TermExpr up = (TermExpr::variable() + TermExpr::constant(Rational(1))) /
                TermExpr::constant(Rational(2));
  TermExpr down = -TermExpr::variable() / TermExpr::constant(Rational(2));
  RuleSequence x(2, {{IndexSet::ap(2, 1), {zero, up}}, {IndexSet::all(), {zero, down}}});
  DeferredPair swapped = DeferredPair::make({2, 0}, {4, 0});
  FalsifyReport rep = falsify_with_whitelist(x, LatticeVector({Rational(0), Rational(0)}),
                                             swapped, gen::sweep_options());
  bool all_one = rep.all_eliminated && rep.candidates.size() == 30;
  for (const auto& c : rep.candidates)
    all_one = all_one && c.exceedance.exact() && c.exceedance.value == Rational(1);
  record(r, all_one, "whitelist falsification did not reach exceedance density 1");
  record(r, rep.label.find("bounded falsification") != std::string::npos,
         "falsification report lacks the bounded-falsification label");
  return r;
}

TheoremResult linear_derivation_sweep(long long seed, int trials) {
  TheoremResult r{"linear-derivation", trials, 0, {}};
  Rng rng(seed, 0x11ea21ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2, 3});
    DStatOrderCert a = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    DStatOrderCert b = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    Rational la = t == 0 ? Rational(0) : gen::rand_rational(rng, 3, 4);
    Rational mu = t == 0 ? Rational(0) : gen::rand_rational(rng, 3, 4);
    CheckVerdict v = check_dstat_order_conv(derive_linear_cert(a, b, la, mu), opts);
    record(r, v.verified(),
           "la = " + la.str() + ", mu = " + mu.str() + ": " + v.reason +
               (v.witness ? " at n = " + std::to_string(*v.witness) : ""));
  }
  return r;
}

TheoremResult lattice_derivation_sweep(long long seed, int trials) {
  TheoremResult r{"lattice-derivation", trials, 0, {}};
  Rng rng(seed, 0x1a771cULL);
  CheckOptions opts = gen::sweep_options();
  const LatticeCertOp ops[] = {LatticeCertOp::Join, LatticeCertOp::Meet, LatticeCertOp::Pos,
                               LatticeCertOp::Neg, LatticeCertOp::Abs};
  const char* names[] = {"join", "meet", "pos", "neg", "abs"};
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2});
    DStatOrderCert a = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    DStatOrderCert b = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    bool all_ok = true;
    std::string why;
    for (int o = 0; o < 5; ++o) {
      try {
        CheckVerdict v = check_dstat_order_conv(derive_lattice_cert(a, b, ops[o]), opts);
        if (!v.verified()) {
          all_ok = false;
          why = std::string(names[o]) + ": " + v.reason;
          break;
        }
      } catch (const Error& e) {
        all_ok = false;
        why = std::string(names[o]) + ": " + e.what();
        break;
      }
    }
    record(r, all_ok, why);
  }
  return r;
}

TheoremResult equal_mod_null_sweep(long long seed, int trials) {
  TheoremResult r{"equal-mod-null", trials, 0, {}};
  Rng rng(seed, 0xe9a1ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2, 3});
    DStatOrderCert cert_y = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    const RuleSequence& y = cert_y.x;
    std::set<long long> elems;
    long long count = rng.range(1, 8);
    for (long long i = 0; i < count; ++i) elems.insert(rng.range(1, 50));
    std::vector<TermExpr> off;
    for (int c = 0; c < dim; ++c)
      off.push_back(TermExpr::constant(Rational(BigInt(rng.range(-20, 20)))));
    std::vector<SeqPiece> pieces;
    pieces.push_back({IndexSet::finite({elems.begin(), elems.end()}), std::move(off)});
    for (const auto& p : y.pieces()) pieces.push_back(p);
    RuleSequence x(dim, std::move(pieces));
    CheckVerdict v = equal_mod_null_transfer(x, y, cert_y, opts);
    record(r, v.verified(), v.reason);
  }
  return r;
}

TheoremResult subsequence_sweep(long long seed, int trials) {
  TheoremResult r{"subsequence", trials, 0, {}};
  Rng rng(seed, 0x5b5e11ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2});
    DStatOrderCert cert = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    long long m = rng.range(2, 6);
    CheckVerdict v = subsequence_check(cert, IndexSet::ap(m, rng.range(0, m - 1)), opts);
    record(r, v.verified(), "K' = AP(" + std::to_string(m) + ", r): " + v.reason);
  }
  return r;
}

TheoremResult stat_implies_deferred_sweep(long long seed, int trials) {
  TheoremResult r{"stat-implies-deferred", trials, 0, {}};
  Rng rng(seed, 0x57a7ULL);
  CheckOptions opts = gen::sweep_options();
  const IndexRule ps[] = {{0, 0}, {1, 0}, {2, 0}, {0, 0}, {1, 2}};
  const IndexRule qs[] = {{2, 0}, {3, 0}, {4, 0}, {3, 5}, {4, 0}};
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2});
    DStatOrderCert cert = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    std::size_t pick = static_cast<std::size_t>(t) % 5;
    DeferredPair target = DeferredPair::make(ps[pick], qs[pick]);
    CheckVerdict v = stat_implies_deferred_check(cert, target, opts);
    record(r, v.verified(), "target " + target.str() + ": " + v.reason);
  }
  return r;
}

TheoremResult monotone_sweep(long long seed, int trials) {
  TheoremResult r{"monotone-order", trials, 0, {}};
  Rng rng(seed, 0x3040ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2});
    LatticeVector limit = gen::rand_vector(rng, dim, 10, 12);
    int dir = t % 2 == 0 ? 1 : -1;
    std::vector<TermExpr> zc, xc;
    for (int c = 0; c < dim; ++c) {
      TermExpr e = TermExpr::constant(Rational(BigInt(rng.range(1, 9)))) /
                   TermExpr::variable().pow(static_cast<int>(rng.range(1, 2)));
      zc.push_back(e);
      xc.push_back(TermExpr::constant(limit[c]) +
                   TermExpr::constant(Rational(dir)) * e);
    }
    RuleSequence z(dim, {{IndexSet::all(), std::move(zc)}});
    RuleSequence x(dim, {{IndexSet::all(), std::move(xc)}});
    DStatOrderCert cert{std::move(x), std::move(limit), std::move(z), IndexSet::all(),
                        DeferredPair::natural(), std::nullopt};
    CheckVerdict v = monotone_order_check(cert, opts);
    record(r, v.verified(), std::string(dir > 0 ? "decreasing" : "increasing") + ": " + v.reason);
  }
  return r;
}

TheoremResult ideal_sweep(long long seed, int trials) {
  TheoremResult r{"ideal-transfer", trials, 0, {}};
  Rng rng(seed, 0x1dea1ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {2, 3, 4});
    std::set<int> support;
    long long size = rng.range(1, dim);
    while (static_cast<long long>(support.size()) < size)
      support.insert(static_cast<int>(rng.range(1, dim)));
    Rational alpha{BigInt(rng.range(-9, 9)), BigInt(10)};
    std::vector<TermExpr> zc, xc, junk;
    TermExpr zero = TermExpr::constant(Rational(0));
    for (int c = 0; c < dim; ++c) {
      if (support.count(c + 1)) {
        TermExpr e = TermExpr::constant(Rational(BigInt(rng.range(1, 9)))) /
                     TermExpr::variable();
        zc.push_back(e);
        xc.push_back(TermExpr::constant(alpha) * e);
        junk.push_back(TermExpr::variable());
      } else {
        zc.push_back(zero);
        xc.push_back(zero);
        junk.push_back(zero);
      }
    }
    IndexSet k = IndexSet::complement(IndexSet::power(3));
    RuleSequence z(dim, {{IndexSet::all(), std::move(zc)}});
    RuleSequence x(dim, {{IndexSet::power(3), std::move(junk)}, {IndexSet::all(), std::move(xc)}});
    DStatOrderCert cert{std::move(x), LatticeVector::zero(dim), std::move(z), std::move(k),
                        DeferredPair::natural(), IndexSet::all()};
    CheckVerdict v = ideal_check(cert, OrderIdeal(dim, support), opts);
    record(r, v.verified(), v.reason);
  }
  return r;
}

TheoremResult order_preservation_sweep(long long seed, int trials) {
  TheoremResult r{"order-preservation", trials, 0, {}};
  Rng rng(seed, 0x09de9ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2, 3});
    LatticeVector lb = gen::rand_vector(rng, dim, 10, 12);
    std::vector<Rational> wc;
    for (int c = 0; c < dim; ++c) wc.push_back(Rational{BigInt(rng.range(0, 8)), BigInt(3)});
    LatticeVector la = lb + LatticeVector(std::move(wc));
    std::vector<TermExpr> zc, xa, xb;
    for (int c = 0; c < dim; ++c) {
      TermExpr e = TermExpr::constant(Rational(BigInt(rng.range(1, 9)))) /
                   TermExpr::variable().pow(static_cast<int>(rng.range(1, 2)));
      zc.push_back(e);
      xa.push_back(TermExpr::constant(la[c]) + e);
      xb.push_back(TermExpr::constant(lb[c]) - e);
    }
    RuleSequence z(dim, {{IndexSet::all(), std::move(zc)}});
    DStatOrderCert a{RuleSequence(dim, {{IndexSet::all(), std::move(xa)}}), la, z,
                     IndexSet::all(), DeferredPair::natural(), std::nullopt};
    DStatOrderCert b{RuleSequence(dim, {{IndexSet::all(), std::move(xb)}}), lb, std::move(z),
                     IndexSet::all(), DeferredPair::natural(), std::nullopt};
    CheckVerdict v = order_preservation_check(a, b, opts);
    record(r, v.verified(), v.reason);
  }
  return r;
}

TheoremResult uniqueness_sweep(long long seed, int trials) {
  TheoremResult r{"uniqueness", trials, 0, {}};
  Rng rng(seed, 0x01719ULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < trials; ++t) {
    int dim = cycle_dim(t, {1, 2});
    DStatOrderCert a = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    DStatOrderCert b = a;
    if (t % 2 == 0) {
      // Same limit through a larger dominator: the probe must agree.
      b.dominator = pointwise_linear(Rational(2), a.dominator, Rational(0), a.dominator);
      CheckVerdict v = uniqueness_probe(a, b, opts);
      record(r, v.kind == CheckVerdict::Kind::Verified, v.reason);
    } else {
      // A genuinely different limit can never yield a second verified
      // certificate; the probe must not validate it.
      std::vector<Rational> shift(static_cast<std::size_t>(dim), Rational(0));
      shift[0] = Rational{BigInt(rng.range(1, 5)), BigInt(1)};
      b.limit = a.limit + LatticeVector(std::move(shift));
      CheckVerdict v = uniqueness_probe(a, b, opts);
      record(r, v.kind != CheckVerdict::Kind::Verified,
             "validated distinct limits " + a.limit.str() + " and " + b.limit.str());
    }
  }
  return r;
}

TheoremResult cesaro_specialization_sweep(long long seed, int trials) {
  TheoremResult r{"cesaro-specialization", trials, 0, {}};
  Rng rng(seed, 0xce5a90ULL);
  for (int t = 0; t < trials; ++t) {
    TermExpr e1 = TermExpr::constant(gen::rand_rational(rng, 12, 6)) +
                  TermExpr::constant(gen::rand_rational(rng, 6, 4)) * TermExpr::variable();
    TermExpr e2 = TermExpr::constant(gen::rand_rational(rng, 12, 6)) +
                  TermExpr::constant(Rational(BigInt(rng.range(-5, 5)))) / TermExpr::variable();
    RuleSequence x(1, {{IndexSet::ap(2, 0), {e1}}, {IndexSet::all(), {e2}}});
    long long n = rng.range(1, 120);
    Budget budget;
    Rational got = deferred_cesaro(x, DeferredPair::natural(), n, budget);
    Rational sum(0);
    for (long long k = 1; k <= n; ++k) sum = sum + x.eval(k)[0];
    Rational want = sum / Rational(BigInt(n));
    record(r, got == want,
           "n = " + std::to_string(n) + ": " + got.str() + " vs " + want.str());
  }
  return r;
}

TheoremResult stat_specialization_corpus(long long seed) {
  Rng rng(seed, 0x5eccULL);
  std::vector<DStatOrderCert> corpus;
  corpus.push_back(cube_dstat_cert());
  for (int dim : {1, 2, 3})
    corpus.push_back(gen::rand_base_cert(rng, dim, DeferredPair::natural()));
  {
    // A refuted instance: constant 1 cannot be dominated by 1/n.
    TermExpr one = TermExpr::constant(Rational(1));
    TermExpr inv = one / TermExpr::variable();
    corpus.push_back({RuleSequence(1, {{IndexSet::all(), {one}}}), LatticeVector({Rational(0)}),
                      RuleSequence(1, {{IndexSet::all(), {inv}}}), IndexSet::all(),
                      DeferredPair::natural(), std::nullopt});
  }
  {
    // A density-refuted instance: K = AP(2,0) only has density 1/2.
    TermExpr inv = TermExpr::constant(Rational(1)) / TermExpr::variable();
    corpus.push_back({RuleSequence(1, {{IndexSet::all(), {inv}}}), LatticeVector({Rational(0)}),
                      RuleSequence(1, {{IndexSet::all(), {inv}}}), IndexSet::ap(2, 0),
                      DeferredPair::natural(), std::nullopt});
  }
  TheoremResult r{"stat-specialization", static_cast<int>(corpus.size()), 0, {}};
  CheckOptions opts = gen::sweep_options();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CheckVerdict va = check_dstat_order_conv(corpus[i], opts);
    CheckVerdict vb = check_stat_order_conv(corpus[i], opts);
    record(r, va.kind == vb.kind && va.witness == vb.witness,
           "corpus entry " + std::to_string(i) + ": deferred path " +
               CheckVerdict::kind_name(va.kind) + " vs statistical path " +
               CheckVerdict::kind_name(vb.kind));
  }
  return r;
}

std::vector<TheoremResult> theorem_suite(long long seed, int trials) {
  if (trials < 1) throw Error("trials must be at least 1");
  std::vector<TheoremResult> out;
  out.push_back(riesz_identity_sweep(seed, trials));
  out.push_back(density_oracle_sweep(seed, std::min(trials, 200)));
  out.push_back(cube_example_instance());
  out.push_back(flagged_example_instance());
  out.push_back(linear_derivation_sweep(seed, trials));
  out.push_back(lattice_derivation_sweep(seed, trials));
  out.push_back(equal_mod_null_sweep(seed, trials));
  out.push_back(subsequence_sweep(seed, trials));
  out.push_back(stat_implies_deferred_sweep(seed, trials));
  out.push_back(monotone_sweep(seed, trials));
  out.push_back(ideal_sweep(seed, trials));
  out.push_back(order_preservation_sweep(seed, trials));
  out.push_back(uniqueness_sweep(seed, trials));
  out.push_back(cesaro_specialization_sweep(seed, trials));
  out.push_back(stat_specialization_corpus(seed));
  return out;
}

}  // namespace latconv
