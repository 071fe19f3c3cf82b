#include "doctest.h"
#include "latconv/index_set.hpp"
#include "latconv/theorems.hpp"

using namespace latconv;

namespace {

long long count(const IndexSet& s, long long lo, long long hi) {
  Budget budget(Budget::kDefault);
  return s.count_window(lo, hi, budget).count;
}

long long oracle(const IndexSet& s, long long lo, long long hi) {
  long long c = 0;
  for (long long k = lo + 1; k <= hi; ++k)
    if (s.contains(k)) ++c;
  return c;
}

}  // namespace

TEST_CASE("membership by structural recursion") {
  IndexSet cubes = IndexSet::power(3);
  CHECK(cubes.contains(27));
  CHECK(!cubes.contains(28));
  CHECK(IndexSet::complement(cubes).contains(28));
  CHECK(cubes.contains(1));
  CHECK(IndexSet::ap(2, 0).contains(10));
  CHECK(!IndexSet::ap(2, 0).contains(9));
  CHECK(IndexSet::finite({1, 4, 9}).contains(4));
  CHECK(!IndexSet::finite({1, 4, 9}).contains(5));
  CHECK(IndexSet::all().contains(123456789));
  CHECK(!IndexSet::empty().contains(1));
}

TEST_CASE("window counts match the frozen examples") {
  CHECK(count(IndexSet::ap(2, 0), 0, 10) == 5);
  CHECK(count(IndexSet::power(3), 0, 1000) == 10);
  CHECK(count(IndexSet::complement(IndexSet::power(3)), 0, 27) == 24);
  CHECK(count(IndexSet::set_intersection(IndexSet::ap(2, 0), IndexSet::ap(3, 0)), 0, 60) == 10);
  CHECK(count(IndexSet::all(), 0, 100) == 100);
  CHECK(count(IndexSet::empty(), 0, 100) == 0);
}

TEST_CASE("exact integer roots classify near perfect powers") {
  IndexSet squares = IndexSet::power(2);
  for (long long m : {1LL, 2LL, 31622LL, 31623LL}) {
    CHECK(squares.contains(m * m));
    CHECK(!squares.contains(m * m + 1));
    if (m > 1) CHECK(!squares.contains(m * m - 1));
  }
  CHECK(count(squares, 0, 1'000'000) == 1000);
}

TEST_CASE("count_window equals the oracle on random sets and windows") {
  gen::Rng rng(17, 0xc0117ULL);
  for (int t = 0; t < 150; ++t) {
    IndexSet s = gen::rand_set(rng, 3);
    long long lo = rng.range(0, 2000);
    long long hi = lo + rng.range(1, 800);
    CHECK(count(s, lo, hi) == oracle(s, lo, hi));
  }
}

TEST_CASE("counts are additive over adjacent windows") {
  gen::Rng rng(18, 0xaddULL);
  for (int t = 0; t < 60; ++t) {
    IndexSet s = gen::rand_set(rng, 3);
    long long lo = rng.range(0, 500), mid = lo + rng.range(1, 300), hi = mid + rng.range(1, 300);
    CHECK(count(s, lo, mid) + count(s, mid, hi) == count(s, lo, hi));
  }
}

TEST_CASE("De Morgan consistency on random windows") {
  gen::Rng rng(19, 0xde304fULL);
  for (int t = 0; t < 60; ++t) {
    IndexSet a = gen::rand_set(rng, 2), b = gen::rand_set(rng, 2);
    IndexSet lhs = IndexSet::complement(IndexSet::set_union(a, b));
    IndexSet rhs = IndexSet::set_intersection(IndexSet::complement(a), IndexSet::complement(b));
    long long lo = rng.range(0, 400), hi = lo + rng.range(1, 400);
    CHECK(count(lhs, lo, hi) == count(rhs, lo, hi));
  }
}

TEST_CASE("renderings reparse structurally") {
  IndexSet s = IndexSet::set_union(
      IndexSet::set_intersection(IndexSet::ap(6, 1), IndexSet::complement(IndexSet::power(2))),
      IndexSet::finite({3, 14, 15}));
  CHECK(s.str() == "OR(AND(AP(6,1),NOT(POW(2))),FIN(3,14,15))");
  CHECK(IndexSet::all().str() == "ALL");
  CHECK(IndexSet::empty().str() == "EMPTY");
}

TEST_CASE("structural equality and simplification") {
  IndexSet evens = IndexSet::ap(2, 0);
  CHECK(evens == IndexSet::ap(2, 0));
  CHECK(!(evens == IndexSet::ap(2, 1)));
  IndexSet doubled = IndexSet::complement(IndexSet::complement(evens));
  CHECK(doubled.simplified() == evens);
  CHECK(IndexSet::set_intersection(evens, IndexSet::all()).simplified() == evens);
  CHECK(IndexSet::set_union(evens, IndexSet::empty()).simplified() == evens);

  // A union can cover a set piecewise: POW(2) sits inside
  // (POW(2) minus {1,2}) union {1}, so the complement meets POW(2) nowhere.
  IndexSet squares = IndexSet::power(2);
  IndexSet cover = IndexSet::set_union(
      IndexSet::set_intersection(IndexSet::complement(IndexSet::finite({1, 2})), squares),
      IndexSet::finite({1}));
  IndexSet gap = IndexSet::set_intersection(IndexSet::complement(cover), squares);
  CHECK(gap.simplified() == IndexSet::empty());
}

TEST_CASE("budget exhaustion signals instead of miscounting") {
  IndexSet hard = IndexSet::set_intersection(IndexSet::ap(7, 3), IndexSet::power(2));
  Budget tiny(10);
  CHECK_THROWS_AS(hard.count_window(0, 1'000'000, tiny), BudgetExceeded);
}
