#include "doctest.h"
#include "latconv/deferred.hpp"

using namespace latconv;

namespace {
DeferredPair pair_of(long long pa, long long pb, long long qa, long long qb) {
  return DeferredPair::make(IndexRule{pa, pb}, IndexRule{qa, qb});
}
}  // namespace

TEST_CASE("the natural pair and rule rendering") {
  DeferredPair nat = DeferredPair::natural();
  CHECK(nat.p(5) == 0);
  CHECK(nat.q(5) == 5);
  CHECK(nat.str() == "(p=0, q=n)");
  CHECK(IndexRule{2, 1}.str() == "2n+1");
  CHECK(IndexRule{1, 0}.str() == "n");
  CHECK(IndexRule{0, 0}.str() == "0");
  CHECK(IndexRule{0, 4}.str() == "4");
}

TEST_CASE("pair validation names the violated condition") {
  auto v = DeferredPair::violation(IndexRule{4, 0}, IndexRule{2, 0});
  REQUIRE(v.has_value());
  CHECK(v->condition == "p_n < q_n for all n >= 1");
  CHECK(v->at_n == 1);

  auto strict = DeferredPair::violation(IndexRule{1, 0}, IndexRule{1, 0});
  REQUIRE(strict.has_value());
  CHECK(strict->condition == "p_n < q_n for all n >= 1");

  auto flat = DeferredPair::violation(IndexRule{0, 0}, IndexRule{0, 7});
  REQUIRE(flat.has_value());
  CHECK(flat->condition == "q_n -> infinity requires slope >= 1");

  CHECK(!DeferredPair::violation(IndexRule{0, 0}, IndexRule{1, 0}).has_value());
  CHECK(!DeferredPair::violation(IndexRule{2, 0}, IndexRule{4, 0}).has_value());
  CHECK_THROWS_AS(DeferredPair::make(IndexRule{4, 0}, IndexRule{2, 0}), Error);
}

TEST_CASE("exact densities of the closed-form families") {
  DeferredPair nat = DeferredPair::natural();
  DensityResult evens = deferred_density(IndexSet::ap(2, 0), nat);
  CHECK(evens.exact());
  CHECK(evens.value == Rational(1, 2));

  DensityResult cubes = deferred_density(IndexSet::power(3), nat);
  CHECK(cubes.exact());
  CHECK(cubes.value.is_zero());

  DensityResult all = deferred_density(IndexSet::all(), pair_of(2, 0, 4, 0));
  CHECK(all.exact());
  CHECK(all.value == Rational(1));

  DensityResult none = deferred_density(IndexSet::empty(), pair_of(2, 0, 4, 0));
  CHECK(none.exact());
  CHECK(none.value.is_zero());

  DensityResult co = deferred_density(IndexSet::complement(IndexSet::ap(3, 1)), nat);
  CHECK(co.exact());
  CHECK(co.value == Rational(2, 3));
}

TEST_CASE("constant-width parity windows have no limit") {
  DensityResult r = deferred_density(IndexSet::ap(2, 0), pair_of(1, 0, 1, 1));
  CHECK(r.is(DensityResult::Kind::NoLimit));
  CHECK(r.cluster_lo == Rational(0));
  CHECK(r.cluster_hi == Rational(1));
}

TEST_CASE("deferred density under (0,n) is the natural density") {
  for (const IndexSet& s : {IndexSet::ap(5, 2), IndexSet::power(2),
                            IndexSet::complement(IndexSet::ap(4, 0))}) {
    DensityResult a = deferred_density(s, DeferredPair::natural());
    DensityResult b = natural_density(s);
    CHECK(a.kind == b.kind);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("complement densities add to one when exact") {
  for (const IndexSet& s : {IndexSet::ap(3, 0), IndexSet::power(3), IndexSet::finite({5, 6})}) {
    DensityResult d = deferred_density(s, DeferredPair::natural());
    DensityResult c = deferred_density(IndexSet::complement(s), DeferredPair::natural());
    REQUIRE(d.exact());
    REQUIRE(c.exact());
    CHECK(d.value + c.value == Rational(1));
  }
}

TEST_CASE("ratio boundedness matches the closed forms") {
  RatioBound r24 = ratio_bounded(pair_of(2, 0, 4, 0));
  CHECK(r24.bounded);
  CHECK(r24.supremum == Rational(1));

  RatioBound rnat = ratio_bounded(DeferredPair::natural());
  CHECK(rnat.bounded);
  CHECK(rnat.supremum == Rational(0));

  RatioBound rthin = ratio_bounded(pair_of(1, 0, 1, 1));
  CHECK(!rthin.bounded);
}

TEST_CASE("refinement nesting, gaps, and the width ratio") {
  DeferredPair inner = pair_of(1, 0, 2, 0);  // (n, 2n]
  DeferredPair outer = pair_of(0, 0, 3, 0);  // (0, 3n]
  RefinementReport r = refinement_check(inner, outer);
  CHECK(r.nested);
  CHECK(r.width_ratio == Rational(3));

  RefinementReport self = refinement_check(inner, inner);
  CHECK(self.nested);
  CHECK(self.width_ratio == Rational(1));
  CHECK(self.p_gap == GapGrowth::Zero);
  CHECK(self.q_gap == GapGrowth::Zero);

  RefinementReport bad = refinement_check(DeferredPair::natural(), pair_of(1, 0, 2, 0));
  CHECK(!bad.nested);
  CHECK(bad.at_n == 1);
}
