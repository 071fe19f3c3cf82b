#include "doctest.h"
#include "latconv/riesz.hpp"
#include "latconv/theorems.hpp"

using namespace latconv;

namespace {
LatticeVector vec2(long long a, long long b) {
  return LatticeVector({Rational(a), Rational(b)});
}
}  // namespace

TEST_CASE("join and meet are coordinatewise") {
  CHECK(join(vec2(1, 5), vec2(3, 2)) == vec2(3, 5));
  CHECK(meet(vec2(1, 5), vec2(3, 2)) == vec2(1, 2));
  CHECK(meet(vec2(0, 0), vec2(-1, 1)) == vec2(-1, 0));
  LatticeVector x = vec2(-7, 4);
  CHECK(join(x, x) == x);
  CHECK(meet(x, x) == x);
}

TEST_CASE("parts split by sign per coordinate") {
  VectorParts p = parts(vec2(-2, 3));
  CHECK(p.pos == vec2(0, 3));
  CHECK(p.neg == vec2(2, 0));
  CHECK(p.abs == vec2(2, 3));
  VectorParts z = parts(LatticeVector::zero(2));
  CHECK(z.pos == vec2(0, 0));
  CHECK(z.neg == vec2(0, 0));
  CHECK(z.abs == vec2(0, 0));
}

TEST_CASE("compare gives the exact partial-order verdict") {
  CHECK(compare(vec2(1, 2), vec2(2, 1)) == OrderRelation::Incomparable);
  CHECK(compare(vec2(1, 1), vec2(1, 2)) == OrderRelation::Less);
  CHECK(compare(vec2(1, 2), vec2(1, 1)) == OrderRelation::Greater);
  CHECK(compare(vec2(3, 4), vec2(3, 4)) == OrderRelation::Equal);
  CHECK(leq(vec2(1, 1), vec2(1, 2)));
  CHECK(!leq(vec2(1, 2), vec2(2, 1)));
}

TEST_CASE("dimension mismatches throw") {
  LatticeVector a({Rational(1)});
  CHECK_THROWS_AS(join(a, vec2(1, 2)), DimensionMismatch);
  CHECK_THROWS_AS(compare(a, vec2(1, 2)), DimensionMismatch);
  CHECK_THROWS_AS((void)(a + vec2(1, 2)), DimensionMismatch);
}

TEST_CASE("ideal membership means vanishing off the support") {
  OrderIdeal ideal(2, {2});
  CHECK(ideal.contains(vec2(0, 5)));
  CHECK(!ideal.contains(vec2(1, 5)));
  CHECK(ideal.contains(LatticeVector::zero(2)));
  CHECK_THROWS_AS(OrderIdeal(2, {3}), Error);
}

TEST_CASE("ideals are solid under domination in modulus") {
  gen::Rng rng(11, 0x1dea1ULL);
  OrderIdeal ideal(3, {1, 3});
  for (int t = 0; t < 200; ++t) {
    // x inside the ideal, y with |y| <= |x| coordinatewise
    Rational a = gen::rand_rational(rng, 8, 5), c = gen::rand_rational(rng, 8, 5);
    LatticeVector x({a, Rational(0), c});
    LatticeVector y({a / Rational(2), Rational(0), -(c / Rational(3))});
    REQUIRE(ideal.contains(x));
    CHECK(leq(modulus(y), modulus(x)));
    CHECK(ideal.contains(y));
  }
}

TEST_CASE("lattice identities hold exactly on seeded random vectors") {
  gen::Rng rng(3, 0x1a111ceULL);
  for (int t = 0; t < 500; ++t) {
    int dim = 1 + static_cast<int>(rng.range(1, 5));
    LatticeVector x = gen::rand_vector(rng, dim, 50, 20);
    LatticeVector y = gen::rand_vector(rng, dim, 50, 20);
    LatticeVector a = gen::rand_vector(rng, dim, 50, 20);
    LatticeVector b = gen::rand_vector(rng, dim, 50, 20);
    VectorParts p = parts(x);
    CHECK(join(x, y) + meet(x, y) == x + y);
    CHECK(p.abs == p.pos + p.neg);
    CHECK(x == p.pos - p.neg);
    CHECK(meet(p.pos, p.neg) == LatticeVector::zero(dim));
    CHECK(leq(modulus(x + y), modulus(x) + modulus(y)));
    CHECK(leq(modulus(join(x, y) - join(a, b)), modulus(x - a) + modulus(y - b)));
    // absorption, commutativity, associativity
    CHECK(join(x, meet(x, y)) == x);
    CHECK(meet(x, join(x, y)) == x);
    CHECK(join(x, y) == join(y, x));
    CHECK(join(join(x, y), a) == join(x, join(y, a)));
    CHECK(meet(meet(x, y), a) == meet(x, meet(y, a)));
  }
}

TEST_CASE("the packaged identity sweep passes") {
  TheoremResult r = riesz_identity_sweep(99, 300);
  CHECK(r.ok());
  CHECK(r.passes == 300);
}
