#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "balab/forcing.hpp"
#include "balab/io.hpp"
#include "balab/rng.hpp"

using namespace balab;

namespace {

const SParams kSmall{{1, 2}, 3};

std::string data_path(const char* name) {
  return std::string(BALAB_DATA_DIR) + "/" + name;
}

Condition single(int level) {
  Condition c;
  c.levels = {level};
  c.points = {{level, 0}};
  c.rows = {{1}};
  return c;
}

// two points (0,0),(1,0) with chosen off-diagonal bits
Condition two_points(uint8_t f0_at_1, uint8_t f1_at_0) {
  Condition c;
  c.levels = {0, 1};
  c.points = {{0, 0}, {1, 0}};
  c.rows = {{1, f0_at_1}, {f1_at_0, 1}};
  return c;
}

}  // namespace

TEST_CASE("validate_condition accepts and rejects") {
  CHECK(validate_condition(kSmall, single(0), Flavor::Q).ok);
  CHECK(validate_condition(kSmall, single(1), Flavor::P).ok);
  CHECK(validate_condition(kSmall, Condition{}, Flavor::Q).ok);  // empty

  // Q: row of a later point must vanish at earlier points
  CHECK(validate_condition(kSmall, two_points(1, 0), Flavor::Q).ok);
  CHECK_FALSE(validate_condition(kSmall, two_points(0, 1), Flavor::Q).ok);
  // P: the other way around
  CHECK(validate_condition(kSmall, two_points(0, 1), Flavor::P).ok);
  CHECK_FALSE(validate_condition(kSmall, two_points(1, 0), Flavor::P).ok);

  Condition bad = single(0);
  bad.rows = {{0}};
  CHECK(validate_condition(kSmall, bad, Flavor::Q).reason == "f_s(s) != 1");

  bad = single(0);
  bad.points = {{0, 5}};
  CHECK_FALSE(validate_condition(kSmall, bad, Flavor::Q).ok);

  bad = single(1);
  bad.points = {{1, 1}};  // level 1 in w but (1,0) missing
  CHECK_FALSE(validate_condition(kSmall, bad, Flavor::Q).ok);

  bad = single(0);
  bad.levels = {};  // point at a level outside w
  CHECK_FALSE(validate_condition(kSmall, bad, Flavor::Q).ok);

  SParams tight{{1, 2}, 1};
  Condition c;
  c.levels = {1};
  c.points = {{1, 0}, {1, 1}};
  c.rows = {{1, 0}, {0, 1}};
  CHECK(validate_condition(tight, c, Flavor::Q).reason == "|u| exceeds cap");
}

TEST_CASE("shifts and cuts") {
  std::vector<GridPoint> pts = {{0, 0}, {1, 0}, {1, 1}};
  std::vector<uint8_t> row = {1, 1, 1};
  CHECK(shift_below(pts, row, 1, 0) == std::vector<uint8_t>{1, 1, 1});
  CHECK(shift_below(pts, row, 1, 1) == std::vector<uint8_t>{1, 0, 1});
  CHECK(shift_below(pts, row, 1, 2) == std::vector<uint8_t>{1, 0, 0});
  CHECK(shift_above(pts, row, 1, 0) == std::vector<uint8_t>{1, 0, 0});
  CHECK(shift_above(pts, row, 1, 1) == std::vector<uint8_t>{1, 1, 0});
  CHECK(cut_levels(pts, row, 1) == std::vector<uint8_t>{1, 0, 0});
  CHECK(cut_levels(pts, row, 0) == std::vector<uint8_t>{0, 0, 0});
  CHECK(cut_levels(pts, row, 2) == row);
}

TEST_CASE("condition_leq: reflexive and monotone examples") {
  for (Flavor fl : {Flavor::Q, Flavor::P}) {
    Condition c = fl == Flavor::Q ? two_points(1, 0) : two_points(0, 1);
    LeqCert cert = condition_leq(kSmall, c, c, fl);
    CHECK(cert.holds);
    REQUIRE(cert.cases.size() == 2);
    CHECK(cert.cases[0].branch == "same-level");
  }
  // changing an agreed bit breaks clause (beta)
  Condition p = two_points(1, 0), q = two_points(0, 0);
  CHECK_FALSE(condition_leq(kSmall, p, q, Flavor::Q).holds);
  // dropping a point breaks clause (alpha)
  CHECK_FALSE(condition_leq(kSmall, p, single(0), Flavor::Q).holds);
}

TEST_CASE("condition_iso is positional") {
  IsoResult ok = condition_iso(kSmall, single(0), single(1), Flavor::Q);
  CHECK(ok.ok);
  CHECK(ok.map == std::vector<int>{0});
  IsoResult bad = condition_iso(kSmall, single(0), two_points(1, 0), Flavor::Q);
  CHECK_FALSE(bad.ok);
  // same shape, different rows
  IsoResult bad2 =
      condition_iso(kSmall, two_points(1, 0), two_points(0, 0), Flavor::Q);
  CHECK(bad2.reason == "rows not transported");
}

TEST_CASE("condition_algebra of a single point") {
  Condition c = single(0);
  PresentedAlgebra aq = condition_algebra(kSmall, c, Flavor::Q);
  REQUIRE(aq.width == 1);
  CHECK(aq.rows.size() == 2);  // zero row and the generator row
  PresentedAlgebra ap = condition_algebra(kSmall, c, Flavor::P);
  CHECK(ap.rows.size() == 2);  // (f)^0 = 0 and (f)^1 = f (cut j=0 repeats 0)
}

TEST_CASE("pair amalgam matches the frozen example") {
  Condition p = single(0), q = single(1);
  AmalgamResult res = pair_amalgamate(kSmall, p, q, Flavor::Q);
  REQUIRE(res.ok);
  CondFile frozen = load_condition_file(data_path("amalgam_q.txt"));
  CHECK(frozen.flavor == Flavor::Q);
  CHECK(res.r.levels == frozen.cond.levels);
  CHECK(res.r.points == frozen.cond.points);
  CHECK(res.r.rows == frozen.cond.rows);
  PresentedAlgebra br = condition_algebra(kSmall, res.r, Flavor::Q);
  PresentedAlgebra gold = load_algebra_file(data_path("amalgam_q_algebra.txt"));
  CHECK(br.width == gold.width);
  CHECK(br.rows == gold.rows);
  // the amalgam dominates both inputs
  CHECK(condition_leq(kSmall, p, res.r, Flavor::Q).holds);
  CHECK(condition_leq(kSmall, q, res.r, Flavor::Q).holds);
}

TEST_CASE("pair amalgam precondition failures") {
  // not isomorphic
  AmalgamResult res =
      pair_amalgamate(kSmall, single(0), two_points(1, 0), Flavor::Q);
  CHECK_FALSE(res.ok);
  // interleaving violated: p-only level above q-only level
  res = pair_amalgamate(kSmall, single(1), single(0), Flavor::Q);
  CHECK_FALSE(res.ok);
  CHECK(res.reason.find("interleaving") != std::string::npos);
}

TEST_CASE("enumerate_conditions at the small parameters") {
  for (Flavor fl : {Flavor::Q, Flavor::P}) {
    std::vector<Condition> all = enumerate_conditions(kSmall, fl);
    CHECK(!all.empty());
    bool has_empty = false;
    for (const Condition& c : all) {
      CHECK(validate_condition(kSmall, c, fl).ok);
      if (c.points.empty()) has_empty = true;
    }
    CHECK(has_empty);
    // no duplicates: conditions differ in points or rows
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        bool same = all[i].points == all[j].points && all[i].rows == all[j].rows;
        CHECK_FALSE(same);
      }
  }
}

TEST_CASE("transport_conjunction renames positions") {
  Condition r = two_points(1, 0);
  Condition src = single(1);
  Term t = transport_conjunction({{0, false}}, src, r);
  CHECK(to_string(t) == "x1");
  CHECK_THROWS(transport_conjunction({{1, false}}, src, r));
}

TEST_CASE("triple amalgamation: generated instances validate and conclude") {
  for (Flavor fl : {Flavor::Q, Flavor::P}) {
    SParams sp = triple_instance_params(fl);
    Rng rng(fl == Flavor::Q ? 41u : 42u);
    for (int trial = 0; trial < 25; ++trial) {
      TripleInstance in = random_triple_instance(sp, rng, fl);
      TripleResult res = triple_amalgamate(sp, in, fl);
      REQUIRE_MESSAGE(res.ok, res.reason);
      CHECK(res.conclusion);
      CHECK(validate_condition(sp, res.r, fl).ok);
    }
  }
}

TEST_CASE("triple amalgamation precondition failures named") {
  SParams sp = triple_instance_params(Flavor::Q);
  Rng rng(43);
  TripleInstance in = random_triple_instance(sp, rng, Flavor::Q);
  TripleInstance broken = in;
  broken.tau = {{int(in.q0.points.size()), false}};
  CHECK(triple_amalgamate(sp, broken, Flavor::Q).reason ==
        "tau literal outside u^{q0}");
  broken = in;
  broken.q = in.q1;  // q no longer extends q0
  CHECK_FALSE(triple_amalgamate(sp, broken, Flavor::Q).ok);
}

TEST_CASE("chain union algebra") {
  Condition p = single(0);
  AmalgamResult am = pair_amalgamate(kSmall, p, single(1), Flavor::Q);
  REQUIRE(am.ok);
  ChainResult ch = chain_union_algebra(kSmall, {p, am.r}, Flavor::Q);
  CHECK(ch.ok);
  CHECK(ch.algebra.width == 2);
  // decreasing chain is rejected
  ChainResult bad = chain_union_algebra(kSmall, {am.r, p}, Flavor::Q);
  CHECK_FALSE(bad.ok);
  CHECK(chain_union_algebra(kSmall, {}, Flavor::Q).reason == "empty chain");
}
