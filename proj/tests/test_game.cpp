#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsg/errors.hpp"
#include "dsg/game.hpp"

using namespace dsg;

namespace {

const char* kG1 =
    "discount 2 1\n"
    "states 2\n"
    "init 0\n"
    "owner 0 max\n"
    "owner 1 min\n"
    "edge 0 1 2\n"
    "edge 0 0 1\n"
    "edge 1 0 0\n"
    "edge 1 1 -1\n";

}  // namespace

TEST_CASE("parse_game on the reference 2-state game") {
  QuantitativeGame g = parse_game_text(kG1);
  CHECK(g.num_states == 2);
  CHECK(g.edges.size() == 4);
  CHECK(g.mu == 2);
  CHECK(g.owner[0] == Player::Max);
  CHECK(g.owner[1] == Player::Min);
  CHECK(g.out_degree(0) == 2);
  CHECK(g.out_degree(1) == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_game_text("discount 2 1\nstates 2\ninit 0\n"
                                       "owner 0 max\nowner 1 min\nedge 0 1 2\nedge 0 0 1\n"),
                       "state 1 has no outgoing edge", ValidationError);
  CHECK_THROWS_AS(parse_game_text("discount 1 1\nstates 1\ninit 0\nowner 0 max\nedge 0 0 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_game_text("states 1\ninit 0\nowner 0 max\nedge 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_game_text("discount 2 1\nstates 1\ninit 5\nowner 0 max\nedge 0 0 0\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_game_text("discount 2 1\nstates 1\ninit 0\nowner 0 max\nbogus\n"),
                  ParseError);
}

TEST_CASE("serialize round trip is the identity on canonical text") {
  QuantitativeGame g = parse_game_text(kG1);
  std::string canon = serialize_game(g);
  QuantitativeGame g2 = parse_game_text(canon);
  CHECK(serialize_game(g2) == canon);
  CHECK(g2.num_states == g.num_states);
  CHECK(g2.init == g.init);
  CHECK(g2.owner == g.owner);
  CHECK(g2.discount == g.discount);
  CHECK(g2.edges.size() == g.edges.size());
}

TEST_CASE("serialize prints negative and zero weights") {
  QuantitativeGame g = parse_game_text("discount 2 1\nstates 1\ninit 0\nowner 0 min\n"
                                       "edge 0 0 -7\nedge 0 0 0\n");
  std::string text = serialize_game(g);
  CHECK(text.find("edge 0 0 -7") != std::string::npos);
  CHECK(text.find("edge 0 0 0") != std::string::npos);
}

TEST_CASE("gen_random shape and determinism") {
  QuantitativeGame g = gen_random(1, 1, 1, 7);
  CHECK(g.num_states == 1);
  CHECK(g.edges.size() == 1);
  CHECK(g.edges[0].src == 0);
  CHECK(g.edges[0].dst == 0);

  CHECK(serialize_game(gen_random(8, 4, 3, 42)) == serialize_game(gen_random(8, 4, 3, 42)));
  CHECK(serialize_game(gen_random(8, 4, 3, 42)) != serialize_game(gen_random(8, 4, 3, 43)));
}

TEST_CASE("generators always validate") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    QuantitativeGame g = gen_random(1 + static_cast<int>(s % 10), 1 + BigInt(s % 5),
                                    1 + static_cast<int>(s % 3), s);
    for (int v = 0; v < g.num_states; ++v) CHECK(g.out_degree(v) >= 1);
  }
}

TEST_CASE("gen_lower_bound structure") {
  CHECK(gen_lower_bound(1).num_states == 7);
  for (int n = 1; n <= 6; ++n) {
    QuantitativeGame g = gen_lower_bound(n);
    CHECK(g.num_states == 6 * n + 1);
    // Exactly one positive entry weight from the start plus one
    // weight-carrying edge per loop.
    int nonzero_in_loops = 0;
    for (const GameEdge& e : g.edges) {
      if (e.src != 0 && e.weight != 0) ++nonzero_in_loops;
    }
    CHECK(nonzero_in_loops == 2);
    CHECK(g.edges[0].weight > 0);
  }
}

TEST_CASE("gen_scalable state counts and determinism") {
  CHECK(gen_scalable(2).num_states == 12);
  CHECK(gen_scalable(5).num_states == 96);
  for (int i = 1; i <= 10; ++i) CHECK(gen_scalable(i).num_states == 3 * (1 << i));
  CHECK(serialize_game(gen_scalable(1)) == serialize_game(gen_scalable(1)));
  QuantitativeGame g = gen_scalable(3);
  CHECK(g.num_states == 24);
  CHECK(g.mu <= 5);
  for (int v = 0; v < g.num_states; ++v) {
    CHECK(g.owner[static_cast<size_t>(v)] == (v % 2 == 0 ? Player::Max : Player::Min));
  }
}
