#include "doctest.h"
#include "latconv/certificates.hpp"
#include "latconv/theorems.hpp"

using namespace latconv;

namespace {

TermExpr N() { return TermExpr::variable(); }
TermExpr C(long long num, long long den = 1) {
  return TermExpr::constant(Rational(BigInt(num), BigInt(den)));
}
LatticeVector vec2(const Rational& a, const Rational& b) { return LatticeVector({a, b}); }
LatticeVector zero2() { return LatticeVector::zero(2); }

IndexSet cubes() { return IndexSet::power(3); }
IndexSet off_cubes() { return IndexSet::complement(cubes()); }

// Fixtures from the cube-spiked worked example.
RuleSequence cube_x() {
  return RuleSequence(2, {{cubes(), {C(0), N()}}, {IndexSet::all(), {C(0), C(1) / N()}}});
}
RuleSequence cube_dom() {
  return RuleSequence(2, {{cubes(), {C(0), N() * N()}}, {IndexSet::all(), {C(0), C(2) / N()}}});
}
RuleSequence cube_zfull() {
  return RuleSequence(2,
                      {{cubes(), {C(0), N() * N()}}, {IndexSet::all(), {C(0), C(1) / (N() * N())}}});
}
DStatOrderCert cube_cert() {
  return {cube_x(), zero2(), cube_dom(), off_cubes(), DeferredPair::natural(), {}};
}

// Sweep-sized options keep the suite fast; one dedicated case covers stability
// under larger prefixes.
CheckOptions fast() { return {2'000, 50'000, Budget::kDefault}; }

// A second verified certificate, spiked on the squares instead.
DStatOrderCert square_cert() {
  RuleSequence y(2, {{IndexSet::power(2), {N(), C(0)}},
                     {IndexSet::all(), {C(1) / (C(2) * N()), C(0)}}});
  RuleSequence z(2, {{IndexSet::power(2), {N(), C(0)}}, {IndexSet::all(), {C(1) / N(), C(0)}}});
  return {y, zero2(), z, IndexSet::complement(IndexSet::power(2)), DeferredPair::natural(), {}};
}

}  // namespace

TEST_CASE("decrease: the guarded cube dominator verifies, the unguarded one refutes") {
  DecreaseCert guarded{cube_zfull(), off_cubes(), DeferredPair::natural()};
  CheckVerdict ok = check_decrease(guarded, fast());
  CHECK(ok.kind == CheckVerdict::Kind::Verified);

  DecreaseCert unguarded{cube_zfull(), IndexSet::all(), DeferredPair::natural()};
  CheckVerdict bad = check_decrease(unguarded, fast());
  CHECK(bad.kind == CheckVerdict::Kind::Refuted);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == 8);  // 1/49 at n = 7, then 64 at the cube n = 8
  // the witness is reproducible by evaluation
  CHECK(!leq(cube_zfull().eval(7), cube_zfull().eval(8)) ==
        false);  // 7 -> 8 increases in coordinate 2
  CHECK(!leq(cube_zfull().eval(8), cube_zfull().eval(7)));
}

TEST_CASE("decrease: globally decreasing and infimum failures") {
  RuleSequence good(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  CHECK(check_decrease({good, IndexSet::all(), DeferredPair::natural()}, fast()).verified());

  RuleSequence lifted(2, {{IndexSet::all(), {C(0), C(1) + C(1) / N()}}});
  CheckVerdict inf = check_decrease({lifted, IndexSet::all(), DeferredPair::natural()}, fast());
  CHECK(inf.kind == CheckVerdict::Kind::Refuted);
  CHECK(inf.reason.find("infimum") != std::string::npos);
}

TEST_CASE("decrease: density gates") {
  RuleSequence good(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  CheckVerdict half = check_decrease({good, IndexSet::ap(2, 0), DeferredPair::natural()}, fast());
  CHECK(half.kind == CheckVerdict::Kind::Refuted);
  CHECK(half.reason.find("delta") != std::string::npos);
  CHECK(half.reason.find("1/2") != std::string::npos);

  // the CRT merge makes this density exactly 1/6, another refutation
  IndexSet sixes = IndexSet::set_intersection(IndexSet::ap(2, 0), IndexSet::ap(3, 0));
  CheckVerdict six = check_decrease({good, sixes, DeferredPair::natural()}, fast());
  CHECK(six.kind == CheckVerdict::Kind::Refuted);
  CHECK(six.reason.find("1/6") != std::string::npos);

  // coprime moduli past the lcm cap leave only a windowed estimate
  IndexSet murky = IndexSet::set_intersection(
      IndexSet::ap(999'983, 1), IndexSet::complement(IndexSet::ap(999'979, 2)));
  CheckVerdict est = check_decrease({good, murky, DeferredPair::natural()}, fast());
  CHECK(est.kind == CheckVerdict::Kind::Inconclusive);
  CHECK(est.reason.find("not exactly computable") != std::string::npos);
}

TEST_CASE("order convergence on all of N") {
  RuleSequence x(2, {{IndexSet::all(), {C(1) / N(), C(0)}}});
  RuleSequence y(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  CHECK(check_order_conv({x, zero2(), y}, fast()).verified());

  RuleSequence parity(1, {{IndexSet::ap(2, 0), {C(1) / N()}}, {IndexSet::all(), {C(0) - (C(1) / N())}}});
  RuleSequence dom(1, {{IndexSet::all(), {C(2) / N()}}});
  CHECK(check_order_conv({parity, LatticeVector({Rational(0)}), dom}, fast()).verified());

  RuleSequence ones = RuleSequence::constant(vec2(Rational(1), Rational(1)));
  CheckVerdict bad = check_order_conv({ones, zero2(), y}, fast());
  CHECK(bad.kind == CheckVerdict::Kind::Refuted);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == 2);  // |x_1| = (1,1) = y_1 passes; n = 2 is the first violation
  CHECK(!leq(modulus(ones.eval(*bad.witness) - zero2()), y.eval(*bad.witness)));
}

TEST_CASE("deferred statistical order convergence on the cube example") {
  CheckVerdict v = check_dstat_order_conv(cube_cert(), fast());
  CHECK(v.verified());
  bool density_evidence = false;
  for (const auto& [key, val] : v.evidence)
    if (key.find("density") != std::string::npos && val.find("1") != std::string::npos)
      density_evidence = true;
  CHECK(density_evidence);
}

TEST_CASE("domination failures carry reproducible witnesses") {
  // 1/n off the cubes is NOT dominated by 1/n^2 there
  RuleSequence thin(2, {{cubes(), {C(0), N() * N()}}, {IndexSet::all(), {C(0), C(1) / (N() * N())}}});
  DStatOrderCert cert{cube_x(), zero2(), thin, off_cubes(), DeferredPair::natural(), {}};
  CheckVerdict v = check_dstat_order_conv(cert, fast());
  CHECK(v.kind == CheckVerdict::Kind::Refuted);
  REQUIRE(v.witness.has_value());
  long long w = *v.witness;
  CHECK(off_cubes().contains(w));
  CHECK(!leq(modulus(cube_x().eval(w) - zero2()), thin.eval(w)));
}

TEST_CASE("dimension mismatches throw") {
  DStatOrderCert cert = cube_cert();
  cert.limit = LatticeVector({Rational(0)});
  CHECK_THROWS_AS(check_dstat_order_conv(cert), DimensionMismatch);
}

TEST_CASE("lifting an order certificate to any pair") {
  RuleSequence x(2, {{IndexSet::all(), {C(1) / N(), C(0)}}});
  RuleSequence y(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  OrderConvCert base{x, zero2(), y};
  for (DeferredPair pair : {DeferredPair::natural(),
                            DeferredPair::make(IndexRule{2, 0}, IndexRule{4, 0})}) {
    DStatOrderCert lifted = lift_order_cert(base, pair);
    CHECK(lifted.set == IndexSet::all());
    CHECK(check_dstat_order_conv(lifted, fast()).verified());
  }
}

TEST_CASE("statistical check is the natural-pair specialization") {
  DStatOrderCert cert = cube_cert();
  CheckVerdict a = check_stat_order_conv(cert, fast());
  CheckVerdict b = check_dstat_order_conv(cert, fast());
  CHECK(a.kind == b.kind);

  cert.pair = DeferredPair::make(IndexRule{2, 0}, IndexRule{4, 0});
  CHECK_THROWS_AS(check_stat_order_conv(cert), Error);
}

TEST_CASE("linear combinations of certificates re-verify") {
  DStatOrderCert a = cube_cert(), b = square_cert();
  DStatOrderCert lin = derive_linear_cert(a, b, Rational(2), Rational(-1, 2));
  CHECK(lin.limit == zero2());
  CHECK(check_dstat_order_conv(lin, fast()).verified());
  for (long long n = 1; n <= 100; ++n)
    CHECK(lin.x.eval(n) == Rational(2) * a.x.eval(n) + Rational(-1, 2) * b.x.eval(n));

  DStatOrderCert zero = derive_linear_cert(a, b, Rational(0), Rational(0));
  CHECK(check_dstat_order_conv(zero, fast()).verified());
  for (long long n = 1; n <= 20; ++n) CHECK(zero.x.eval(n) == zero2());

  DStatOrderCert cancel = derive_linear_cert(a, a, Rational(1), Rational(-1));
  CHECK(cancel.limit == zero2());
  CHECK(check_dstat_order_conv(cancel, fast()).verified());

  DStatOrderCert other = b;
  other.pair = DeferredPair::make(IndexRule{2, 0}, IndexRule{4, 0});
  CHECK_THROWS_AS(derive_linear_cert(a, other, Rational(1), Rational(1)), Error);
}

TEST_CASE("lattice combinations of certificates re-verify") {
  DStatOrderCert a = cube_cert(), b = square_cert();
  for (LatticeCertOp op : {LatticeCertOp::Join, LatticeCertOp::Meet}) {
    DStatOrderCert d = derive_lattice_cert(a, b, op);
    CHECK(check_dstat_order_conv(d, fast()).verified());
    for (long long n = 1; n <= 60; ++n) {
      LatticeVector want = op == LatticeCertOp::Join ? join(a.x.eval(n), b.x.eval(n))
                                                     : meet(a.x.eval(n), b.x.eval(n));
      CHECK(d.x.eval(n) == want);
    }
  }
  DStatOrderCert pos = derive_lattice_cert(a, a, LatticeCertOp::Pos);
  DStatOrderCert neg = derive_lattice_cert(a, a, LatticeCertOp::Neg);
  DStatOrderCert abs_ = derive_lattice_cert(a, a, LatticeCertOp::Abs);
  CHECK(check_dstat_order_conv(pos, fast()).verified());
  CHECK(check_dstat_order_conv(neg, fast()).verified());
  CHECK(check_dstat_order_conv(abs_, fast()).verified());
  // x is nonnegative here, so |x| = x pointwise
  for (long long n = 1; n <= 30; ++n) CHECK(abs_.x.eval(n) == a.x.eval(n));

  // positive part of a negative-first-coordinate limit
  RuleSequence shifted = pointwise_shift(cube_x(), vec2(Rational(-1), Rational(2)));
  DStatOrderCert c{shifted, vec2(Rational(-1), Rational(2)), cube_dom(), off_cubes(),
                   DeferredPair::natural(), {}};
  REQUIRE(check_dstat_order_conv(c, fast()).verified());
  DStatOrderCert cpos = derive_lattice_cert(c, c, LatticeCertOp::Pos);
  CHECK(cpos.limit == vec2(Rational(0), Rational(2)));
  CHECK(check_dstat_order_conv(cpos, fast()).verified());
}

TEST_CASE("uniqueness: equal limits agree, distinct limits never validate") {
  DStatOrderCert a = cube_cert();
  DStatOrderCert b = a;
  b.dominator = pointwise_linear(Rational(2), a.dominator, Rational(0), a.dominator);
  CHECK(uniqueness_probe(a, b, fast()).verified());
  CHECK(uniqueness_probe(a, a, fast()).verified());

  DStatOrderCert wrong = a;
  wrong.limit = vec2(Rational(0), Rational(1));
  CheckVerdict v = uniqueness_probe(a, wrong, fast());
  CHECK(v.kind != CheckVerdict::Kind::Verified);

  CheckVerdict diff = uniqueness_probe(a, square_cert(), fast());
  CHECK(diff.kind == CheckVerdict::Kind::PreconditionFailed);
  CHECK(diff.reason.find("different sequences") != std::string::npos);
}

TEST_CASE("monotone certificates upgrade to order convergence") {
  RuleSequence dec(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  DStatOrderCert a{dec, zero2(), dec, IndexSet::all(), DeferredPair::natural(), {}};
  CHECK(monotone_order_check(a, fast()).verified());

  RuleSequence inc(2, {{IndexSet::all(), {C(1) - C(1) / N(), C(0)}}});
  RuleSequence incdom(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  DStatOrderCert b{inc, vec2(Rational(1), Rational(0)), incdom, IndexSet::all(),
                   DeferredPair::natural(), {}};
  CHECK(monotone_order_check(b, fast()).verified());

  RuleSequence parity(1, {{IndexSet::ap(2, 0), {C(1) / N()}},
                          {IndexSet::all(), {C(0) - (C(1) / N())}}});
  RuleSequence pdom(1, {{IndexSet::all(), {C(2) / N()}}});
  DStatOrderCert c{parity, LatticeVector({Rational(0)}), pdom, IndexSet::all(),
                   DeferredPair::natural(), {}};
  CheckVerdict v = monotone_order_check(c, fast());
  CHECK(v.kind == CheckVerdict::Kind::PreconditionFailed);
  CHECK(v.reason.find("monotone") != std::string::npos);
}

TEST_CASE("subsequences along positive-density sets") {
  DStatOrderCert a = cube_cert();
  CheckVerdict whole = subsequence_check(a, IndexSet::all(), fast());
  CHECK(whole.kind == check_dstat_order_conv(a, fast()).kind);

  CheckVerdict evens = subsequence_check(a, IndexSet::ap(2, 0), fast());
  CHECK(evens.verified());

  CheckVerdict vanishing = subsequence_check(a, cubes(), fast());
  CHECK(vanishing.kind == CheckVerdict::Kind::Inconclusive);
}

TEST_CASE("statistical certificates retarget to bounded-ratio pairs") {
  DStatOrderCert a = cube_cert();
  CheckVerdict ok = stat_implies_deferred_check(a, DeferredPair::make(IndexRule{2, 0}, IndexRule{4, 0}), fast());
  CHECK(ok.verified());

  CheckVerdict bad = stat_implies_deferred_check(a, DeferredPair::make(IndexRule{1, 0}, IndexRule{1, 1}), fast());
  CHECK(bad.kind == CheckVerdict::Kind::PreconditionFailed);
  CHECK(bad.reason.find("unbounded") != std::string::npos);
}

TEST_CASE("ideal closure of limits and dominators") {
  RuleSequence s(2, {{cubes(), {C(0), N()}}, {IndexSet::all(), {C(0), C(1) / N()}}});
  RuleSequence zs(2, {{cubes(), {C(0), N() * N()}}, {IndexSet::all(), {C(0), C(2) / N()}}});
  DStatOrderCert cert{s, zero2(), zs, off_cubes(), DeferredPair::natural(), {}};
  REQUIRE(check_dstat_order_conv(cert, fast()).verified());

  CHECK(ideal_check(cert, OrderIdeal(2, {2}), fast()).verified());
  CHECK(ideal_check(cert, OrderIdeal::full(2), fast()).verified());

  CheckVerdict out = ideal_check(cert, OrderIdeal(2, {1}), fast());
  CHECK(out.kind == CheckVerdict::Kind::Refuted);
  REQUIRE(out.witness.has_value());
  CHECK(*out.witness == 1);
}

TEST_CASE("class membership sorts candidates by violation density") {
  RuleSequence x = RuleSequence::constant(vec2(Rational(5), Rational(5)));
  RuleSequence z(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  auto verdicts = class_membership(x, z, DeferredPair::natural(),
                                   {vec2(Rational(5), Rational(5)), zero2()}, {}, fast());
  REQUIRE(verdicts.size() == 2);
  CHECK(verdicts[0].verified());
  CHECK(verdicts[1].kind == CheckVerdict::Kind::Refuted);
  bool density_one = false;
  for (const auto& [key, val] : verdicts[1].evidence)
    if (key == "violation_density" && val.find("1") != std::string::npos) density_one = true;
  CHECK(density_one);
}

TEST_CASE("violation sets are exact when signs certify") {
  RuleSequence x = RuleSequence::constant(vec2(Rational(5), Rational(5)));
  RuleSequence z(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  auto everywhere = violation_set(x, zero2(), z);
  REQUIRE(everywhere.has_value());
  DensityResult d = deferred_density(*everywhere, DeferredPair::natural());
  CHECK(d.exact());
  CHECK(d.value == Rational(1));

  auto nowhere = violation_set(x, vec2(Rational(5), Rational(5)), z);
  REQUIRE(nowhere.has_value());
  DensityResult d0 = deferred_density(*nowhere, DeferredPair::natural());
  CHECK(d0.exact());
  CHECK(d0.value.is_zero());
}

TEST_CASE("transfer across a null disagreement set") {
  DStatOrderCert a = cube_cert();
  CHECK(equal_mod_null_transfer(a.x, a.x, a, fast()).verified());

  // w agrees with x off the cubes and differs on them
  RuleSequence w(2, {{IndexSet::all(), {C(0), C(1) / N()}}});
  CheckVerdict v = equal_mod_null_transfer(w, a.x, a, fast());
  CHECK(v.verified());

  // y differs from x on the evens: transfer must refute
  RuleSequence far(2, {{IndexSet::ap(2, 0), {C(7), C(7)}},
                       {cubes(), {C(0), N()}},
                       {IndexSet::all(), {C(0), C(1) / N()}}});
  CheckVerdict bad = equal_mod_null_transfer(far, a.x, a, fast());
  CHECK(bad.kind == CheckVerdict::Kind::Refuted);
}

TEST_CASE("order preservation of limits") {
  RuleSequence hi(2, {{IndexSet::all(), {C(1) / N(), C(1) / N()}}});
  RuleSequence lo = RuleSequence::constant(zero2());
  DStatOrderCert a{hi, zero2(), hi, IndexSet::all(), DeferredPair::natural(), {}};
  DStatOrderCert b{lo, zero2(), hi, IndexSet::all(), DeferredPair::natural(), {}};
  CHECK(order_preservation_check(a, b, fast()).verified());

  CheckVerdict bad = order_preservation_check(b, a, fast());
  CHECK(bad.kind == CheckVerdict::Kind::PreconditionFailed);
  CHECK(bad.reason.find("premise") != std::string::npos);
}

TEST_CASE("the bounded falsifier eliminates every whitelist dominator") {
  RuleSequence flagged(1, {{IndexSet::ap(2, 1), {(N() + C(1)) / C(2)}},
                           {IndexSet::all(), {C(0) - N() / C(2)}}});
  DeferredPair swapped = DeferredPair::make(IndexRule{2, 0}, IndexRule{4, 0});
  FalsifyReport rep = falsify_with_whitelist(flagged, LatticeVector({Rational(0)}), swapped, fast());
  CHECK(rep.candidates.size() == 30);
  CHECK(rep.all_eliminated);
  CHECK(rep.label.find("bounded falsification") != std::string::npos);
  for (const auto& cand : rep.candidates) {
    CHECK(cand.eliminated);
    CHECK(cand.exceedance.exact());
    CHECK(cand.exceedance.value == Rational(1));
  }
}

TEST_CASE("verdicts are stable under a larger prefix") {
  CheckOptions small;
  small.prefix_n = 1'000;
  small.n_max = 50'000;
  CheckOptions big;
  big.prefix_n = 20'000;
  big.n_max = 200'000;
  DStatOrderCert a = cube_cert();
  CHECK(check_dstat_order_conv(a, small).kind == check_dstat_order_conv(a, big).kind);
  DecreaseCert unguarded{cube_zfull(), IndexSet::all(), DeferredPair::natural()};
  CheckVerdict s = check_decrease(unguarded, small), b = check_decrease(unguarded, big);
  CHECK(s.kind == b.kind);
  CHECK(s.witness == b.witness);
}

TEST_CASE("random base certificates verify and survive derivations") {
  gen::Rng rng(5, 0xba5ecULL);
  CheckOptions opts = gen::sweep_options();
  for (int t = 0; t < 25; ++t) {
    int dim = 1 + static_cast<int>(rng.range(0, 2));
    DStatOrderCert cert = gen::rand_base_cert(rng, dim, DeferredPair::natural());
    CHECK(check_dstat_order_conv(cert, opts).verified());
  }
}
