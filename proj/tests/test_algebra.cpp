#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "balab/algebra.hpp"
#include "balab/rng.hpp"

using namespace balab;

namespace {

PresentedAlgebra alg(int width, std::initializer_list<std::uint64_t> rows) {
  std::vector<HomRow> rs;
  for (std::uint64_t b : rows) rs.emplace_back(b, width);
  return make_algebra(width, std::move(rs));
}

// free algebra on n generators: F = all of 2^n
PresentedAlgebra free_algebra(int n) {
  std::vector<HomRow> rs;
  for (std::uint64_t b = 0; b < (1ull << n); ++b) rs.emplace_back(b, n);
  return make_algebra(n, std::move(rs));
}

Term random_term(Rng& rng, int width, int depth) {
  if (depth == 0 || rng.range(0, 4) == 0) {
    int k = rng.range(0, width);  // k == width means a constant
    if (k == width) return Term::constant(rng.bit());
    return Term::var(k);
  }
  switch (rng.range(0, 2)) {
    case 0: return Term::negate(random_term(rng, width, depth - 1));
    case 1: {
      std::vector<Term> kids;
      for (int i = rng.range(2, 3); i > 0; --i)
        kids.push_back(random_term(rng, width, depth - 1));
      return Term::conj(std::move(kids));
    }
    default: {
      std::vector<Term> kids;
      for (int i = rng.range(2, 3); i > 0; --i)
        kids.push_back(random_term(rng, width, depth - 1));
      return Term::disj(std::move(kids));
    }
  }
}

}  // namespace

TEST_CASE("make_algebra sorts and deduplicates") {
  PresentedAlgebra a = alg(2, {0b11, 0b01, 0b11});
  CHECK(a.rows.size() == 2);
  CHECK(a.rows[0].bits == 0b01);
  CHECK(a.rows[1].bits == 0b11);
}

TEST_CASE("nonzero iff some row evaluates to 1") {
  // rows over (x0,x1): {10, 11} means x0 always 1
  PresentedAlgebra a = alg(2, {0b01, 0b11});  // bit0 = x0
  CHECK(is_nonzero(a, parse_term("x0")));
  CHECK_FALSE(is_nonzero(a, parse_term("!x0")));
  CHECK(is_nonzero(a, parse_term("x1")));
  CHECK(is_nonzero(a, parse_term("!x1")));
  CHECK_FALSE(is_nonzero(a, parse_term("0")));
}

TEST_CASE("leq examples") {
  PresentedAlgebra a = alg(2, {0b01, 0b11});
  // !x0 is zero here, so it is below everything
  CHECK(leq_holds(a, parse_term("!x0"), {parse_term("0")}));
  CHECK(leq_holds(a, parse_term("x1"), {parse_term("x0")}));
  CHECK_FALSE(leq_holds(a, parse_term("x0"), {parse_term("x1")}));
  CHECK(leq_holds(a, parse_term("x0"), {parse_term("x1"), parse_term("!x1")}));
  // empty join is 0
  CHECK_FALSE(leq_holds(a, parse_term("x0"), {}));
  CHECK(leq_holds(a, parse_term("!x0"), {}));
}

TEST_CASE("equal_holds quotients by the presentation") {
  PresentedAlgebra a = alg(2, {0b01, 0b11});
  CHECK(equal_holds(a, parse_term("x1"), parse_term("x0 & x1")));
  CHECK(equal_holds(a, parse_term("x0"), parse_term("1")));
  CHECK_FALSE(equal_holds(a, parse_term("x1"), parse_term("x0")));
}

TEST_CASE("atoms partition the rows") {
  PresentedAlgebra a = alg(2, {0b01, 0b11});
  std::vector<Term> at = atoms(a);
  REQUIRE(at.size() == 2);
  for (const Term& t : at) CHECK(is_nonzero(a, t));
  // atoms are pairwise disjoint
  CHECK(leq_holds(a, Term::conj({at[0], at[1]}), {Term::constant(false)}));
  // and they join to 1
  CHECK(leq_holds(a, Term::constant(true), {at[0], at[1]}));
}

TEST_CASE("closure is identity for finite presentations") {
  PresentedAlgebra a = alg(3, {0b001, 0b111, 0b010});
  std::vector<HomRow> cl = closure(3, a.rows);
  CHECK(cl == a.rows);
}

TEST_CASE("oracle_leq agrees with leq_holds on random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    int width = rng.range(1, 4);
    int nrows = rng.range(1, 8);
    std::vector<HomRow> rows;
    for (int i = 0; i < nrows; ++i)
      rows.emplace_back(rng.below(1ull << width), width);
    PresentedAlgebra a = make_algebra(width, std::move(rows));
    Term lhs = random_term(rng, width, 2);
    std::vector<Term> rhs;
    for (int i = rng.range(0, 2); i > 0; --i) rhs.push_back(random_term(rng, width, 2));
    CHECK(leq_holds(a, lhs, rhs) == oracle_leq(a, lhs, rhs));
  }
}

TEST_CASE("subalgebra: restriction of the free algebra") {
  PresentedAlgebra big = free_algebra(3);
  PresentedAlgebra small = free_algebra(2);
  CHECK(subalgebra_check(small, big));
  CHECK(subalgebra_check(small, big, {0, 2}));
  // a small algebra whose row fails to extend
  PresentedAlgebra big2 = alg(3, {0b000, 0b111});
  PresentedAlgebra small2 = alg(2, {0b01});
  CHECK_FALSE(subalgebra_check(small2, big2));
  // a big row restricting outside cl(F_small)
  PresentedAlgebra small3 = alg(2, {0b00});
  CHECK_FALSE(subalgebra_check(small3, big2));
  PresentedAlgebra small4 = alg(2, {0b00, 0b11});
  CHECK(subalgebra_check(small4, big2));
}

TEST_CASE("free algebra has 2^n atoms and full structure") {
  for (int n = 1; n <= 3; ++n) {
    PresentedAlgebra a = free_algebra(n);
    CHECK(int(atoms(a).size()) == (1 << n));
    CHECK_FALSE(leq_holds(a, parse_term("x0"), {Term::constant(false)}));
  }
}
