#ifndef DSG_PRODUCT_HPP
#define DSG_PRODUCT_HPP

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsg/comparator.hpp"
#include "dsg/game.hpp"
#include "dsg/util.hpp"

namespace dsg {

enum class Role { Protagonist, Antagonist };

enum class WinCondition { Safety, Reachability };

// Unweighted two-player game with a safety (avoid-set) or reachability
// (target-set) condition. Product states remember their game/comparator
// components; edges remember the game weight they synchronized on.
struct TwoPlayerGame {
  int num_states = 0;
  int init = 0;
  std::vector<Role> owner;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<BigInt>> weight;  // parallel to succ
  WinCondition condition = WinCondition::Safety;
  std::vector<char> special;  // avoid set (safety) or target set (reachability)
  std::vector<int> game_state, comp_state;  // provenance per product state

  long num_edges() const {
    long e = 0;
    for (const auto& s : succ) e += static_cast<long>(s.size());
    return e;
  }
};

// Memoryless strategy: protagonist state -> chosen successor (index into succ).
struct Strategy {
  std::unordered_map<int, int> choice;
};

struct CompSatisficeResult {
  bool holds = false;
  std::optional<Strategy> strategy;  // on the product arena, when holds
  long product_states = 0;
  long product_edges = 0;
  TwoPlayerGame product;  // kept for strategy serialization / verification
};

// Synchronized product restricted to states reachable from (init_G, init_C).
// Safety comparators give safety games (avoid the BAD sink copies);
// co-safety comparators give reachability games (reach the accepting sink
// copies). Throws AlphabetError if some edge weight exceeds the comparator
// alphabet.
TwoPlayerGame make_product(const QuantitativeGame& g, const Comparator& c, Player protagonist,
                           const Deadline& deadline = {});

// Protagonist attractor of the target set, with a rank-decreasing strategy.
std::pair<std::vector<char>, Strategy> solve_reachability(const TwoPlayerGame& g);

// Complement of the antagonist attractor of the avoid set; the strategy
// keeps play inside the winning region (lowest successor id).
std::pair<std::vector<char>, Strategy> solve_safety(const TwoPlayerGame& g);

// Comparator-based satisficing. The arena protagonist is the player that
// can guarantee the relation against the optimal cost: MIN for {leq, lt},
// MAX for {geq, gt} (the answer is the comparison of the optimal cost with
// v for any requested player). Throws UnsupportedDiscountError for
// non-integer discount factors.
CompSatisficeResult comp_satisfice(const QuantitativeGame& g, const Rational& v, Relation rel,
                                   Player player, const Deadline& deadline = {});

// Exhaustively checks a protagonist product strategy: enumerates every
// memoryless antagonist strategy, evaluates each resulting lasso exactly,
// and requires cost rel v on all of them. Throws VerificationTooLargeError
// beyond ~1e6 antagonist profiles.
bool verify_strategy(const TwoPlayerGame& product, const Strategy& strategy,
                     const DiscountFactor& d, const Rational& v, Relation rel);

}  // namespace dsg

#endif  // DSG_PRODUCT_HPP
