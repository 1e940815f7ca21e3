#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsg/errors.hpp"
#include "dsg/value_iteration.hpp"
#include "oracles.hpp"

using namespace dsg;

namespace {

QuantitativeGame g1() {
  return parse_game_text(
      "discount 2 1\nstates 2\ninit 0\nowner 0 max\nowner 1 min\n"
      "edge 0 1 2\nedge 0 0 1\nedge 1 0 0\nedge 1 1 -1\n");
}

QuantitativeGame single_loop(Player owner, std::initializer_list<long> weights) {
  QuantitativeGame g;
  g.num_states = 1;
  g.init = 0;
  g.discount = DiscountFactor::make(2, 1);
  g.owner = {owner};
  for (long w : weights) g.edges.push_back(GameEdge{0, 0, BigInt(w)});
  g.validate();
  return g;
}

}  // namespace

TEST_CASE("vi_init takes the per-state best edge weight") {
  QuantitativeGame g = g1();
  ViState s = vi_init(g);
  CHECK(s.k == 1);
  CHECK(s.wt(0) == 2);
  CHECK(s.wt(1) == -1);
  CHECK(vi_init(single_loop(Player::Max, {5})).wt(0) == 5);
  CHECK(vi_init(single_loop(Player::Min, {3, 7})).wt(0) == 3);
}

TEST_CASE("vi_step applies the recurrence once") {
  QuantitativeGame g = g1();
  ViState s = vi_step(g, vi_init(g));
  CHECK(s.k == 2);
  CHECK(s.wt(0) == 2);
  CHECK(s.wt(1) == Rational(-3, 2));
}

TEST_CASE("vi_step on a single max self-loop gives the geometric partial sum") {
  QuantitativeGame g = single_loop(Player::Max, {1});
  ViState s = vi_init(g);
  for (int k = 1; k <= 12; ++k) {
    CHECK(s.wt(0) == Rational(2) - Rational(1, BigInt(1) << (s.k - 1)));
    s = vi_step(g, s);
  }
}

TEST_CASE("iteration_budget matches the reference inequality") {
  QuantitativeGame g = single_loop(Player::Max, {1});
  QuantitativeGame g2 = g1();
  // |V|=2, d=2, mu=1
  QuantitativeGame twostate = parse_game_text(
      "discount 2 1\nstates 2\ninit 0\nowner 0 max\nowner 1 min\n"
      "edge 0 1 1\nedge 1 0 -1\n");
  IterationBudget b = iteration_budget(twostate);
  CHECK(b.bound_diff == 144);
  CHECK(b.bound_w == 12);
  CHECK(b.k_max == 10);

  QuantitativeGame zero = single_loop(Player::Max, {0});
  CHECK(iteration_budget(zero).k_max == 1);
  (void)g;
  (void)g2;
}

TEST_CASE("vi_interval around the reference game") {
  QuantitativeGame g = g1();
  ViState s = vi_init(g);
  auto [lo1, hi1] = vi_interval(s, g);
  CHECK(lo1 == 0);
  CHECK(hi1 == 4);
  s = vi_step(g, s);
  auto [lo2, hi2] = vi_interval(s, g);
  CHECK(lo2 == 1);
  CHECK(hi2 == 3);
  // width shrinks by exactly 1/d each step
  CHECK(hi2 - lo2 == (hi1 - lo1) / 2);
}

TEST_CASE("reconstruct_rational") {
  CHECK(reconstruct_rational(Rational(9, 10), Rational(11, 10), 1) == 1);
  CHECK(reconstruct_rational(Rational(19, 48), Rational(21, 48), 5) == Rational(2, 5));
  CHECK_THROWS_AS(reconstruct_rational(Rational(0), Rational(1, 10), 3), ReconstructionError);
  CHECK_THROWS_AS(reconstruct_rational(Rational(1), Rational(1), 5), ReconstructionError);
}

TEST_CASE("vi_optimize on pinned instances") {
  CHECK(vi_optimize(g1()).optimal_cost == 2);
  CHECK(vi_optimize(single_loop(Player::Max, {1})).optimal_cost == 2);
  CHECK(vi_optimize(single_loop(Player::Min, {-1, 1})).optimal_cost == -2);
}

TEST_CASE("vi_optimize equals brute force on random games") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    QuantitativeGame g = gen_random(1 + static_cast<int>(s % 6), 1 + BigInt(s % 3), 2, 900 + s);
    OptimalCostResult r = vi_optimize(g);
    Rational w = oracle::brute_force_cost(g);
    CHECK(r.optimal_cost == w);
    CHECK(r.lo <= w);
    CHECK(w <= r.hi);
  }
}

TEST_CASE("brute-force cost lies in the interval at every iteration") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    QuantitativeGame g = gen_random(2 + static_cast<int>(s % 5), 2, 3, 40 + s);
    Rational w = oracle::brute_force_cost(g);
    ViState st = vi_init(g);
    IterationBudget b = iteration_budget(g);
    for (long k = 1; k <= b.k_max; ++k) {
      auto [lo, hi] = vi_interval(st, g);
      CHECK(lo <= w);
      CHECK(w <= hi);
      if (k < b.k_max) st = vi_step(g, st);
    }
  }
}

TEST_CASE("rational discount factors are supported") {
  QuantitativeGame g = parse_game_text(
      "discount 3 2\nstates 2\ninit 0\nowner 0 max\nowner 1 min\n"
      "edge 0 1 2\nedge 0 0 1\nedge 1 0 0\nedge 1 1 -1\n");
  OptimalCostResult r = vi_optimize(g);
  CHECK(r.optimal_cost == oracle::brute_force_cost(g));
}

TEST_CASE("vi_satisfice on the reference game") {
  QuantitativeGame g = g1();
  SatisficeAnswer a = vi_satisfice(g, Rational(3), Relation::Geq, Player::Max);
  CHECK(!a.holds);

  a = vi_satisfice(g, Rational(100), Relation::Leq, Player::Min);
  CHECK(a.holds);
  CHECK(a.decided_by == Decided::IntervalExit);
  CHECK(a.iterations_used == 1);

  a = vi_satisfice(g, Rational(2), Relation::Geq, Player::Max);
  CHECK(a.holds);
  CHECK(a.decided_by == Decided::BudgetExhausted);

  // Strict relation at the boundary fails: optimal play costs exactly 2.
  CHECK(!vi_satisfice(g, Rational(2), Relation::Lt, Player::Min).holds);
  CHECK(vi_satisfice(g, Rational(2), Relation::Leq, Player::Min).holds);
}

TEST_CASE("vi_satisfice equals comparison of the optimal cost for any pair") {
  int checked = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    QuantitativeGame g = gen_random(1 + static_cast<int>(s % 6), 1 + BigInt(s % 4), 2, 500 + s);
    Rational w = vi_optimize(g).optimal_cost;
    for (const Rational& v : std::vector<Rational>{w - 1, w - Rational(1, 3), w,
                                                   w + Rational(1, 3), w + 1}) {
      for (Relation rel : {Relation::Leq, Relation::Geq, Relation::Lt, Relation::Gt}) {
        for (Player pl : {Player::Max, Player::Min}) {
          CHECK(vi_satisfice(g, v, rel, pl).holds == rel_holds(w, rel, v));
          ++checked;
        }
      }
    }
  }
  CHECK(checked == 40 * 5 * 4 * 2);
}

TEST_CASE("iteration counts grow with the lower-bound family") {
  long prev = 0;
  for (int n = 1; n <= 6; ++n) {
    OptimalCostResult r = vi_optimize(gen_lower_bound(n));
    CHECK(r.iterations_used > prev);
    prev = r.iterations_used;
  }
}
