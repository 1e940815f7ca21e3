#ifndef DSG_GAME_HPP
#define DSG_GAME_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsg/exact_arith.hpp"

namespace dsg {

enum class Player { Max, Min };

inline Player opponent(Player p) { return p == Player::Max ? Player::Min : Player::Max; }

struct GameEdge {
  int src;
  int dst;
  BigInt weight;
};

// Finite two-player turn-based graph game with integer edge weights and a
// discount factor. Immutable after validate().
struct QuantitativeGame {
  int num_states = 0;
  int init = 0;
  std::vector<Player> owner;    // one entry per state
  std::vector<GameEdge> edges;  // parallel edges permitted
  DiscountFactor discount = DiscountFactor{2, 1};

  // Derived by validate().
  std::vector<std::vector<int>> out;  // state -> edge indices
  BigInt mu = 0;                      // max |weight|

  // Checks ids, owner coverage and the at-least-one-outgoing-edge
  // invariant, then fills the derived fields. Throws ValidationError.
  void validate();

  int out_degree(int v) const { return static_cast<int>(out[static_cast<size_t>(v)].size()); }
};

// Line-oriented text format; see serialize_game for the canonical form.
QuantitativeGame parse_game(std::istream& in);
QuantitativeGame parse_game_text(const std::string& text);
QuantitativeGame load_game_file(const std::string& path);

// Canonical form: discount, states, init, sorted owner lines, edge lines
// sorted by (src, dst, weight). parse(serialize(g)) is structurally g.
std::string serialize_game(const QuantitativeGame& g);

// Seed-deterministic random game: 1..branching outgoing edges per state
// (a self-loop first, so validation always passes), weights uniform in
// [-mu, mu], owners by seeded coin. Discount factor 2.
QuantitativeGame gen_random(int states, const BigInt& mu, int branching, std::uint64_t seed);

// The iteration-count lower-bound family: a start state choosing between a
// short loop (2n edges) entered with a positive weight and a long loop
// (4n edges) entered for free; one unit-weight edge inside each loop. All
// weights are scaled by d^{3n} so they are integral. 6n+1 states, d = 2.
QuantitativeGame gen_lower_bound(int n);

// Scalable benchmark family: exactly 3 * 2^i states on a ring with one
// extra chord per state, alternating owners, weights in [-5, 5] seeded by
// i. Discount factor 2.
QuantitativeGame gen_scalable(int i);

}  // namespace dsg

#endif  // DSG_GAME_HPP
