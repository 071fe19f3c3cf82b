#include "doctest.h"
#include "latconv/sequence.hpp"

using namespace latconv;

namespace {

TermExpr N() { return TermExpr::variable(); }
TermExpr C(long long num, long long den = 1) {
  return TermExpr::constant(Rational(BigInt(num), BigInt(den)));
}

// The cube-spiked dominator: (0, n^2) on cubes, (0, 1/n^2) elsewhere.
RuleSequence cube_z() {
  return RuleSequence(
      2, {{IndexSet::power(3), {C(0), N() * N()}},
          {IndexSet::all(), {C(0), C(1) / (N() * N())}}});
}

LatticeVector vec2(const Rational& a, const Rational& b) { return LatticeVector({a, b}); }

}  // namespace

TEST_CASE("piecewise evaluation takes the first matching rule") {
  RuleSequence z = cube_z();
  CHECK(z.eval(8) == vec2(Rational(0), Rational(64)));
  CHECK(z.eval(10) == vec2(Rational(0), Rational(1, 100)));
  CHECK(z.eval(1) == vec2(Rational(0), Rational(1)));  // 1 = 1^3 is a cube
  RuleSequence c = RuleSequence::constant(vec2(Rational(3), Rational(-1, 2)));
  CHECK(c.eval(1) == vec2(Rational(3), Rational(-1, 2)));
  CHECK(c.eval(999983) == vec2(Rational(3), Rational(-1, 2)));
}

TEST_CASE("the last guard must cover everything") {
  CHECK_THROWS_AS(RuleSequence(1, {{IndexSet::power(3), {N()}}}), Error);
  CHECK_NOTHROW(RuleSequence(1, {{IndexSet::power(3), {N()}}, {IndexSet::all(), {C(0)}}}));
}

TEST_CASE("division is certified total at construction") {
  CHECK_NOTHROW(C(1) / N());
  CHECK_NOTHROW(C(1) / (N() * N() + C(1)));
  // n - 3 vanishes at n = 3
  CHECK_THROWS_AS(C(1) / (N() - C(3)), Error);
  CHECK_THROWS_AS(C(1) / C(0), Error);
}

TEST_CASE("effective guards split off earlier pieces") {
  RuleSequence z = cube_z();
  std::vector<IndexSet> effs = z.effective_guards();
  REQUIRE(effs.size() == 2);
  CHECK(effs[0] == IndexSet::power(3).simplified());
  CHECK(effs[1] == IndexSet::complement(IndexSet::power(3)).simplified());
}

TEST_CASE("deferred Cesaro means match direct summation") {
  Budget budget(Budget::kDefault);
  RuleSequence id(1, {{IndexSet::all(), {N()}}});
  CHECK(deferred_cesaro(id, DeferredPair::natural(), 9, budget) == Rational(5));
  DeferredPair shifted = DeferredPair::make(IndexRule{1, 0}, IndexRule{2, 0});
  CHECK(deferred_cesaro(id, shifted, 10, budget) == Rational(31, 2));
  RuleSequence one(1, {{IndexSet::all(), {C(1)}}});
  CHECK(deferred_cesaro(one, shifted, 123, budget) == Rational(1));
}

TEST_CASE("Cesaro oracle sweep on piecewise sequences") {
  RuleSequence x(1, {{IndexSet::ap(3, 1), {C(2) * N()}}, {IndexSet::all(), {C(1) / N()}}});
  DeferredPair pair = DeferredPair::make(IndexRule{1, 1}, IndexRule{3, 0});
  for (long long n : {1LL, 2LL, 7LL, 40LL}) {
    Budget budget(Budget::kDefault);
    Rational sum;
    for (long long k = pair.p(n) + 1; k <= pair.q(n); ++k) sum += x.eval(k)[0];
    CHECK(deferred_cesaro(x, pair, n, budget) == sum / Rational(pair.width(n)));
  }
}

TEST_CASE("tail classification of polynomial ratios") {
  TailClass a = tail_class(C(1) / (N() * N()));
  CHECK(a.limit == TailClass::Limit::Converges);
  CHECK(a.limit_value.is_zero());
  CHECK(a.monotone == TailClass::Monotone::NonIncreasing);
  CHECK(a.from_n <= 2);  // a certified bound, not necessarily the least one

  TailClass b = tail_class(N() * N());
  CHECK(b.limit == TailClass::Limit::DivergesPlus);

  TailClass c = tail_class((N() + C(1)) / (C(2) * N()));
  CHECK(c.limit == TailClass::Limit::Converges);
  CHECK(c.limit_value == Rational(1, 2));
  CHECK(c.monotone == TailClass::Monotone::NonIncreasing);

  TailClass d = tail_class(C(0) - N());
  CHECK(d.limit == TailClass::Limit::DivergesMinus);

  TailClass e = tail_class(C(5, 3));
  CHECK(e.limit == TailClass::Limit::Converges);
  CHECK(e.limit_value == Rational(5, 3));
  CHECK(e.monotone == TailClass::Monotone::Constant);
}

TEST_CASE("tail limits match large-n evaluation") {
  for (const TermExpr& e : {C(1) / N(), (N() + C(1)) / (C(2) * N()),
                            (C(3) * N() * N() - N()) / (N() * N() + C(7))}) {
    TailClass t = tail_class(e);
    REQUIRE(t.limit == TailClass::Limit::Converges);
    Rational at = e.eval(1'000'000);
    CHECK(abs(at - t.limit_value) < Rational(1, 1000));
  }
}

TEST_CASE("pointwise arithmetic agrees with eval") {
  RuleSequence x(1, {{IndexSet::ap(2, 0), {N()}}, {IndexSet::all(), {C(1) / N()}}});
  RuleSequence y(1, {{IndexSet::power(2), {C(3)}}, {IndexSet::all(), {C(0) - N()}}});
  RuleSequence lin = pointwise_linear(Rational(2), x, Rational(-1, 2), y);
  RuleSequence neg = pointwise_negate(x);
  RuleSequence shf = pointwise_shift(x, LatticeVector({Rational(5)}));
  for (long long n = 1; n <= 64; ++n) {
    CHECK(lin.eval(n) == Rational(2) * x.eval(n) + Rational(-1, 2) * y.eval(n));
    CHECK(neg.eval(n) == -x.eval(n));
    CHECK(shf.eval(n)[0] == x.eval(n)[0] + Rational(5));
  }
}

TEST_CASE("pointwise lattice ops agree with coordinatewise ones") {
  RuleSequence x(2, {{IndexSet::ap(2, 1), {N(), C(0) - N()}},
                     {IndexSet::all(), {C(1) / N(), C(2)}}});
  RuleSequence y = RuleSequence::constant(vec2(Rational(1), Rational(1)));
  RuleSequence j = pointwise_lattice(x, y, LatticeOp::Join);
  RuleSequence m = pointwise_lattice(x, y, LatticeOp::Meet);
  RuleSequence p = pointwise_positive_part(x);
  RuleSequence q = pointwise_negative_part(x);
  RuleSequence a = pointwise_modulus(x);
  for (long long n = 1; n <= 50; ++n) {
    CHECK(j.eval(n) == join(x.eval(n), y.eval(n)));
    CHECK(m.eval(n) == meet(x.eval(n), y.eval(n)));
    CHECK(p.eval(n) == positive_part(x.eval(n)));
    CHECK(q.eval(n) == negative_part(x.eval(n)));
    CHECK(a.eval(n) == modulus(x.eval(n)));
  }
}

TEST_CASE("windowed-mean check on the classical examples") {
  DeferredPair nat = DeferredPair::natural();
  RuleSequence harm(1, {{IndexSet::all(), {C(1) / N()}}});
  EmpiricalCheck ok = strong_dpq_check(harm, Rational(0), nat, 50'000, Rational(1, 1000),
                                       Budget::kDefault);
  CHECK(ok.kind == EmpiricalCheck::Kind::Consistent);

  RuleSequence c5 = RuleSequence(1, {{IndexSet::all(), {C(5)}}});
  EmpiricalCheck same = strong_dpq_check(c5, Rational(5), nat, 10'000, Rational(1, 1000),
                                         Budget::kDefault);
  CHECK(same.kind == EmpiricalCheck::Kind::Consistent);
  CHECK(same.final_value.is_zero());

  RuleSequence one(1, {{IndexSet::all(), {C(1)}}});
  EmpiricalCheck bad = strong_dpq_check(one, Rational(0), nat, 10'000, Rational(1, 1000),
                                        Budget::kDefault);
  CHECK(bad.kind == EmpiricalCheck::Kind::Refuted);
  REQUIRE(bad.lower_bound.has_value());
  // the symbolic route certifies half the separation, not the sharp mean
  CHECK(*bad.lower_bound > Rational(1, 4));
}

TEST_CASE("scalar statistical convergence via exact exceedance sets") {
  DeferredPair nat = DeferredPair::natural();
  RuleSequence sq_ind(1, {{IndexSet::power(2), {C(1)}}, {IndexSet::all(), {C(0)}}});
  RealStatCheck a = deferred_stat_check_real(sq_ind, Rational(0), Rational(1, 2), nat,
                                             1'000'000, Budget::kDefault);
  CHECK(a.kind == RealStatCheck::Kind::ConvergentExact);
  CHECK(a.exceedance.exact());
  CHECK(a.exceedance.value.is_zero());

  RuleSequence c2 = RuleSequence(1, {{IndexSet::all(), {C(2)}}});
  RealStatCheck b = deferred_stat_check_real(c2, Rational(2), Rational(1, 7), nat, 100'000,
                                             Budget::kDefault);
  CHECK(b.kind == RealStatCheck::Kind::ConvergentExact);

  RuleSequence ev_ind(1, {{IndexSet::ap(2, 0), {C(1)}}, {IndexSet::all(), {C(0)}}});
  RealStatCheck c = deferred_stat_check_real(ev_ind, Rational(0), Rational(1, 2), nat,
                                             100'000, Budget::kDefault);
  CHECK(c.kind == RealStatCheck::Kind::NotConvergentExact);
  CHECK(c.exceedance.value == Rational(1, 2));
}

TEST_CASE("indicator exceedance reproduces the set density") {
  DeferredPair nat = DeferredPair::natural();
  for (const IndexSet& s : {IndexSet::ap(3, 0), IndexSet::power(3)}) {
    RuleSequence ind(1, {{s, {C(1)}}, {IndexSet::all(), {C(0)}}});
    RealStatCheck r = deferred_stat_check_real(ind, Rational(0), Rational(1, 2), nat,
                                               100'000, Budget::kDefault);
    DensityResult d = deferred_density(s, nat);
    REQUIRE(d.exact());
    CHECK(r.exceedance.exact());
    CHECK(r.exceedance.value == d.value);
  }
}
