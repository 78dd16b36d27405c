#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "balab/rng.hpp"
#include "balab/term.hpp"

using namespace balab;

TEST_CASE("parse and print round-trips") {
  for (const char* src : {"x0", "!x1", "x0 & x1", "x0 | x1 & !x2", "0", "1",
                          "(x0 | x1) & x2", "!(x0 & x1) | !x2", "x10 & !x3"}) {
    Term t = parse_term(src);
    Term u = parse_term(to_string(t));
    CHECK(to_string(t) == to_string(u));
  }
}

TEST_CASE("precedence: and binds tighter than or") {
  Term t = parse_term("x0 | x1 & x2");
  REQUIRE(t.kind == Term::Kind::Or);
  CHECK(t.kids.size() == 2);
  CHECK(t.kids[1].kind == Term::Kind::And);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_term(""), parse_error);
  CHECK_THROWS_AS(parse_term("x"), parse_error);
  CHECK_THROWS_AS(parse_term("x0 &"), parse_error);
  CHECK_THROWS_AS(parse_term("(x0"), parse_error);
  CHECK_THROWS_AS(parse_term("x0 x1"), parse_error);
  CHECK_THROWS_AS(parse_term("y0"), parse_error);
  try {
    parse_term("x0 & ?");
  } catch (const parse_error& e) {
    CHECK(e.pos == 5);
  }
}

TEST_CASE("evaluate_hom basics") {
  HomRow f(0b101, 3);  // x0=1 x1=0 x2=1
  CHECK(evaluate_hom(f, parse_term("x0")));
  CHECK_FALSE(evaluate_hom(f, parse_term("x1")));
  CHECK(evaluate_hom(f, parse_term("x0 & !x1 & x2")));
  CHECK(evaluate_hom(f, parse_term("x1 | x2")));
  CHECK_FALSE(evaluate_hom(f, parse_term("0")));
  CHECK(evaluate_hom(f, parse_term("1")));
  CHECK_THROWS(evaluate_hom(f, parse_term("x3")));
}

TEST_CASE("elementary conjunction rejects repeats") {
  CHECK_THROWS(elementary_conjunction({{0, false}, {0, true}}));
  Term t = elementary_conjunction({{1, true}, {0, false}});
  CHECK(to_string(t) == "!x1 & x0");
}

namespace {

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

TEST_CASE("dnf preserves evaluation on every row, widths up to 5") {
  Rng rng(20240811);
  for (int trial = 0; trial < 400; ++trial) {
    int width = rng.range(1, 5);
    Term t = random_term(rng, width, 3);
    Term d = dnf(t);
    for (std::uint64_t bits = 0; bits < (1ull << width); ++bits) {
      HomRow f(bits, width);
      CHECK(evaluate_hom(f, t) == evaluate_hom(f, d));
    }
  }
}

TEST_CASE("dnf yields a disjunction of elementary conjunctions") {
  Term d = dnf(parse_term("!(x0 & x2) | x1"));
  // every disjunct mentions each occurring generator exactly once
  auto check_conj = [](const Term& c) {
    if (c.kind == Term::Kind::Atom || c.kind == Term::Kind::Not) return;
    REQUIRE(c.kind == Term::Kind::And);
    for (const Term& lit : c.kids) {
      bool is_lit = lit.kind == Term::Kind::Atom ||
                    (lit.kind == Term::Kind::Not &&
                     lit.kids[0].kind == Term::Kind::Atom);
      CHECK(is_lit);
    }
  };
  if (d.kind == Term::Kind::Or)
    for (const Term& c : d.kids) check_conj(c);
  else
    check_conj(d);
}
