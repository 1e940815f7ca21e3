#ifndef DSG_TEMPORAL_HPP
#define DSG_TEMPORAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "dsg/product.hpp"

namespace dsg {

// Atomic-proposition labeling: per game state, a bitmask over `ap`.
struct Labeling {
  std::vector<std::string> ap;
  std::vector<unsigned> mask;  // one entry per game state

  int alphabet_size() const { return 1 << ap.size(); }
};

// Deterministic parity automaton over subsets of the AP universe.
// Max-parity semantics: the protagonist wins a run iff the highest
// priority visited infinitely often is even.
struct Dpa {
  int num_states = 0;
  int init = 0;
  std::vector<int> prio;
  std::vector<std::vector<int>> trans;  // [state][label mask]
};

struct ParityGame {
  int num_states = 0;
  int init = 0;
  std::vector<Role> owner;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<BigInt>> weight;  // parallel to succ
  std::vector<int> prio;
  std::vector<int> prod_state, dpa_state, game_state;  // provenance per parity state

  long num_edges() const {
    long e = 0;
    for (const auto& s : succ) e += static_cast<long>(s.size());
    return e;
  }
};

struct TemporalResult {
  bool holds = false;
  std::optional<Strategy> strategy;  // on the parity arena, when holds
  long parity_states = 0;
  long parity_edges = 0;
  ParityGame parity;  // kept for strategy verification
};

// `ap a b ...` / `dpastates n` / `dpainit id` / `dpaprio id p` /
// `dpatrans src {a,b}|- dst`; every (state, subset) pair must be covered.
Dpa parse_dpa(const std::string& text, std::vector<std::string>& ap_out);

// `label <game-state> {a,b}|-`; unlabeled states get the empty set.
Labeling parse_labeling(const std::string& text, const std::vector<std::string>& ap,
                        int num_game_states);

std::string load_text_file(const std::string& path);

// Two-step synchronized product: game x comparator, then x DPA reading the
// label of the source game state. The comparator condition is folded into
// the priorities: BAD-region states (safety) get an odd priority above all
// DPA priorities, and states where a co-safety obligation is still unmet
// likewise, so the protagonist must satisfy comparator AND parity.
ParityGame parity_product(const QuantitativeGame& g, const Labeling& lab, const Comparator& c,
                          const Dpa& a, Player protagonist, const Deadline& deadline = {});

// Zielonka's recursive algorithm; protagonist winning region and a
// memoryless strategy on it.
std::pair<std::vector<char>, Strategy> solve_parity(const ParityGame& pg);

// Satisficing under a temporal goal. The arena protagonist follows the same
// canonical mapping as comp_satisfice: MIN for {leq, lt}, MAX for {geq, gt}.
TemporalResult satisfice_with_goal(const QuantitativeGame& g, const Labeling& lab, const Dpa& a,
                                   const Rational& v, Relation rel, Player player,
                                   const Deadline& deadline = {});

// Exhaustive soundness check of a protagonist parity strategy: every
// antagonist memoryless response yields a lasso whose cost satisfies rel v
// and whose maximal loop priority is even.
bool verify_parity_strategy(const ParityGame& pg, const Strategy& strategy,
                            const DiscountFactor& d, const Rational& v, Relation rel);

}  // namespace dsg

#endif  // DSG_TEMPORAL_HPP
