#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsg/errors.hpp"
#include "dsg/product.hpp"
#include "dsg/temporal.hpp"
#include "oracles.hpp"

using namespace dsg;

namespace {

const char* kTrivialDpa =
    "ap a\n"
    "dpastates 1\n"
    "dpainit 0\n"
    "dpaprio 0 0\n"
    "dpatrans 0 - 0\n"
    "dpatrans 0 {a} 0\n";

const char* kRejectingDpa =
    "ap a\n"
    "dpastates 1\n"
    "dpainit 0\n"
    "dpaprio 0 1\n"
    "dpatrans 0 - 0\n"
    "dpatrans 0 {a} 0\n";

// Accepts exactly the label sequences with infinitely many {a}.
const char* kInfOftenA =
    "ap a\n"
    "dpastates 2\n"
    "dpainit 0\n"
    "dpaprio 0 1\n"
    "dpaprio 1 2\n"
    "dpatrans 0 - 0\n"
    "dpatrans 0 {a} 1\n"
    "dpatrans 1 - 0\n"
    "dpatrans 1 {a} 1\n";

Dpa dpa_of(const char* text, std::vector<std::string>& ap) { return parse_dpa(text, ap); }

QuantitativeGame g1() {
  return parse_game_text(
      "discount 2 1\nstates 2\ninit 0\nowner 0 max\nowner 1 min\n"
      "edge 0 1 2\nedge 0 0 1\nedge 1 0 0\nedge 1 1 -1\n");
}

ParityGame hand_parity(std::vector<Role> owner, std::vector<std::vector<int>> succ,
                       std::vector<int> prio, int init = 0) {
  ParityGame pg;
  pg.num_states = static_cast<int>(owner.size());
  pg.init = init;
  pg.owner = std::move(owner);
  pg.succ = std::move(succ);
  pg.prio = std::move(prio);
  pg.weight.resize(pg.succ.size());
  for (size_t u = 0; u < pg.succ.size(); ++u) pg.weight[u].assign(pg.succ[u].size(), BigInt(0));
  return pg;
}

}  // namespace

TEST_CASE("dpa parsing and validation") {
  std::vector<std::string> ap;
  Dpa a = dpa_of(kInfOftenA, ap);
  CHECK(ap == std::vector<std::string>{"a"});
  CHECK(a.num_states == 2);
  CHECK(a.prio[1] == 2);
  CHECK(a.trans[0][1] == 1);  // mask {a} = 1

  CHECK_THROWS_AS(parse_dpa("ap a\ndpastates 1\ndpainit 0\ndpatrans 0 - 0\n", ap),
                  ValidationError);  // not total: {a} missing
  CHECK_THROWS_AS(parse_dpa("dpastates 1\ndpainit 0\n", ap), ParseError);
  CHECK_THROWS_AS(parse_dpa("ap a\ndpastates 1\ndpainit 0\ndpatrans 0 {b} 0\n", ap), ParseError);
}

TEST_CASE("labeling parsing") {
  std::vector<std::string> ap = {"a", "b"};
  Labeling lab = parse_labeling("label 0 {a,b}\nlabel 1 -\n", ap, 3);
  CHECK(lab.mask[0] == 3);
  CHECK(lab.mask[1] == 0);
  CHECK(lab.mask[2] == 0);  // unlabeled states default to the empty set
  CHECK_THROWS_AS(parse_labeling("label 9 {a}\n", ap, 3), ParseError);
  CHECK_THROWS_AS(parse_labeling("label 0 {c}\n", ap, 3), ParseError);
}

TEST_CASE("solve_parity on single-state loops") {
  auto [win_even, s1] = solve_parity(hand_parity({Role::Protagonist}, {{0}}, {2}));
  CHECK(win_even[0]);
  auto [win_odd, s2] = solve_parity(hand_parity({Role::Protagonist}, {{0}}, {1}));
  CHECK(!win_odd[0]);
}

TEST_CASE("solve_parity with an antagonist gate") {
  // 0 (antagonist) chooses between an even-priority cycle (1) and an odd
  // one (2); the antagonist avoids the even cycle.
  ParityGame pg = hand_parity({Role::Antagonist, Role::Protagonist, Role::Protagonist},
                              {{1, 2}, {1}, {2}}, {0, 2, 1});
  auto [win, strat] = solve_parity(pg);
  CHECK(!win[0]);
  CHECK(win[1]);
  CHECK(!win[2]);
}

TEST_CASE("Zielonka agrees with brute force on a template family") {
  for (int owners = 0; owners < 8; ++owners) {
    for (int prios = 0; prios < 27; ++prios) {
      for (int t = 0; t < 3; ++t) {
        std::vector<Role> owner(3);
        std::vector<int> prio(3);
        for (int v = 0; v < 3; ++v) {
          owner[static_cast<size_t>(v)] =
              (owners >> v) & 1 ? Role::Protagonist : Role::Antagonist;
          prio[static_cast<size_t>(v)] = (prios / (v == 0 ? 1 : v == 1 ? 3 : 9)) % 3;
        }
        std::vector<std::vector<int>> succ(3);
        for (int v = 0; v < 3; ++v) succ[static_cast<size_t>(v)] = {(v + 1) % 3, (v + t) % 3};
        ParityGame pg = hand_parity(owner, succ, prio);
        auto [win, strat] = solve_parity(pg);
        bool expect = oracle::brute_force_arena(
            pg, [&](const LassoSeq&, const std::vector<int>& loop) {
              int mx = 0;
              for (int u : loop) mx = std::max(mx, pg.prio[static_cast<size_t>(u)]);
              return mx % 2 == 0;
            });
        CHECK(win[static_cast<size_t>(pg.init)] == expect);
        if (win[static_cast<size_t>(pg.init)]) {
          CHECK(verify_parity_strategy(pg, strat, DiscountFactor::make(2, 1), Rational(100),
                                       Relation::Leq));
        }
      }
    }
  }
}

TEST_CASE("trivial goal degenerates to plain comparator satisficing") {
  std::vector<std::string> ap;
  Dpa trivial = dpa_of(kTrivialDpa, ap);
  for (std::uint64_t s = 0; s < 30; ++s) {
    QuantitativeGame g = gen_random(2 + static_cast<int>(s % 5), 1 + BigInt(s % 3), 2, 600 + s);
    Labeling lab;
    lab.ap = ap;
    lab.mask.assign(static_cast<size_t>(g.num_states), 0);
    lab.mask[0] = 1;
    for (Rational v : {Rational(0), Rational(1), Rational(-2)}) {
      for (Relation rel : {Relation::Leq, Relation::Gt}) {
        TemporalResult r = satisfice_with_goal(g, lab, trivial, v, rel, Player::Min);
        CHECK(r.holds == comp_satisfice(g, v, rel, Player::Min).holds);
      }
    }
  }
}

TEST_CASE("rejecting goal never holds") {
  std::vector<std::string> ap;
  Dpa rejecting = dpa_of(kRejectingDpa, ap);
  QuantitativeGame g = g1();
  Labeling lab;
  lab.ap = ap;
  lab.mask = {1, 0};
  for (Rational v : {Rational(100), Rational(-100)}) {
    for (Relation rel : {Relation::Leq, Relation::Geq}) {
      CHECK(!satisfice_with_goal(g, lab, rejecting, v, rel, Player::Min).holds);
    }
  }
}

TEST_CASE("cost and visiting goals must be met together") {
  std::vector<std::string> ap;
  Dpa inf_a = dpa_of(kInfOftenA, ap);
  QuantitativeGame g = g1();
  Labeling lab;
  lab.ap = ap;
  lab.mask = {1, 0};  // state 0 labeled {a}
  // With a generous threshold MIN can loop through state 0 forever.
  TemporalResult relaxed = satisfice_with_goal(g, lab, inf_a, Rational(10), Relation::Leq,
                                               Player::Min);
  CHECK(relaxed.holds);
  CHECK(verify_parity_strategy(relaxed.parity, *relaxed.strategy, g.discount, Rational(10),
                               Relation::Leq));
  // Brute force on the same arena, judging plays semantically: cost within
  // threshold and the labeled game state visited infinitely often.
  for (Rational v : {Rational(10), Rational(2), Rational(0), Rational(-1)}) {
    TemporalResult r = satisfice_with_goal(g, lab, inf_a, v, Relation::Leq, Player::Min);
    bool expect = oracle::brute_force_arena(
        r.parity, [&](const LassoSeq& l, const std::vector<int>& loop) {
          if (!(dsum_lasso(l, g.discount) <= v)) return false;
          for (int u : loop) {
            if (lab.mask[static_cast<size_t>(r.parity.game_state[static_cast<size_t>(u)])] & 1)
              return true;
          }
          return false;
        });
    CHECK(r.holds == expect);
  }
}

TEST_CASE("temporal answers match brute force on tiny labeled instances") {
  std::vector<std::string> ap;
  Dpa inf_a = dpa_of(kInfOftenA, ap);
  for (std::uint64_t s = 0; s < 25; ++s) {
    QuantitativeGame g = gen_random(2, 1, 2, 8800 + s);
    Labeling lab;
    lab.ap = ap;
    lab.mask = {static_cast<unsigned>(s % 2), static_cast<unsigned>((s >> 1) % 2)};
    Rational v(static_cast<long>(s % 3) - 1);
    TemporalResult r = satisfice_with_goal(g, lab, inf_a, v, Relation::Leq, Player::Min);
    bool expect = oracle::brute_force_arena(
        r.parity, [&](const LassoSeq& l, const std::vector<int>& loop) {
          if (!(dsum_lasso(l, g.discount) <= v)) return false;
          for (int u : loop) {
            if (lab.mask[static_cast<size_t>(r.parity.game_state[static_cast<size_t>(u)])] & 1)
              return true;
          }
          return false;
        });
    CHECK(r.holds == expect);
  }
}

TEST_CASE("monotonicity in the threshold for MIN with leq") {
  std::vector<std::string> ap;
  Dpa inf_a = dpa_of(kInfOftenA, ap);
  for (std::uint64_t s = 0; s < 10; ++s) {
    QuantitativeGame g = gen_random(3, 2, 2, 50 + s);
    Labeling lab;
    lab.ap = ap;
    lab.mask.assign(static_cast<size_t>(g.num_states), 0);
    lab.mask[static_cast<size_t>(s % 3)] = 1;
    bool prev = false;
    for (long v = -6; v <= 6; ++v) {
      bool now = satisfice_with_goal(g, lab, inf_a, Rational(v), Relation::Leq, Player::Min).holds;
      if (prev) CHECK(now);
      prev = now;
    }
  }
}
