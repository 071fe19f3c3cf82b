#include "doctest.h"
#include "latconv/rational.hpp"

using namespace latconv;

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(3, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(-Rational(3, 7) == Rational(-3, 7));
}

TEST_CASE("rendering is canonical num/den") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(7).str() == "7/1");
  CHECK(Rational().str() == "0/1");
}

TEST_CASE("zero denominators are rejected") {
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), Error);
  Rational x(1);
  CHECK_THROWS_AS(x / Rational(0), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
}

TEST_CASE("parsing accepts integers and fractions") {
  CHECK(Rational::parse("7/3") == Rational(7, 3));
  CHECK(Rational::parse("-22/7") == Rational(-22, 7));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(Rational::parse(""), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational::parse("1/"), Error);
}

TEST_CASE("str round-trips through parse") {
  for (const Rational& q : {Rational(0), Rational(7), Rational(-3, 8), Rational(355, 113)})
    CHECK(Rational::parse(q.str()) == q);
}

TEST_CASE("comparisons are exact at large magnitudes") {
  Rational big = Rational(1);
  for (int i = 0; i < 30; ++i) big *= Rational(10);
  CHECK(big + Rational(1) > big);
  CHECK((big + Rational(1)) - big == Rational(1));
  CHECK(Rational(1) / big > Rational(0));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
}

TEST_CASE("sign and predicates") {
  CHECK(Rational(0).is_zero());
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(-1, 9).sign() == -1);
  CHECK(Rational(4, 2).is_integer());
  CHECK(!Rational(1, 2).is_integer());
  CHECK(abs(Rational(-3, 4)) == Rational(3, 4));
  CHECK(min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
  CHECK(max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
}
