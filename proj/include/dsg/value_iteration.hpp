#ifndef DSG_VALUE_ITERATION_HPP
#define DSG_VALUE_ITERATION_HPP

#include <utility>
#include <vector>

#include "dsg/game.hpp"
#include "dsg/relation.hpp"
#include "dsg/util.hpp"

namespace dsg {

// Snapshot of the value-iteration vector wt_k. Values are stored as integer
// numerators over the shared denominator p^{k-1}; wt() exposes the
// lowest-terms rational (its denominator always divides p^{k-1}).
struct ViState {
  std::vector<BigInt> numer;
  BigInt shared_den = 1;  // p^{k-1}
  long k = 1;

  Rational wt(int v) const { return Rational(numer[static_cast<size_t>(v)], shared_den); }
};

struct IterationBudget {
  long k_max = 1;
  BigInt bound_w;     // (p^|V| - q^|V|) * p^|V|
  BigInt bound_diff;  // (p^|V| - q^|V|)^2 * p^{2|V|}
};

struct OptimalCostResult {
  Rational optimal_cost;
  long iterations_used = 0;
  Rational lo, hi;
  IterationBudget budget;
};

enum class Decided { BudgetExhausted, IntervalExit };

struct SatisficeAnswer {
  bool holds = false;
  long iterations_used = 0;
  Decided decided_by = Decided::BudgetExhausted;
};

// wt_1: per-state max/min of outgoing edge weights.
ViState vi_init(const QuantitativeGame& g);

// One application of the recurrence wt_{k+1}(v) = opt_{(v,w)} gamma(v,w) + wt_k(w)/d.
ViState vi_step(const QuantitativeGame& g, const ViState& s);

// Error-bound interval around the optimal cost at iteration k:
// wt_k(init) -+ mu / ((d-1) * d^{k-1}).
std::pair<Rational, Rational> vi_interval(const ViState& s, const QuantitativeGame& g);

// Denominator bounds plus the least k with 2*mu/((d-1)*d^{k-1}) < 1/bound_diff.
IterationBudget iteration_budget(const QuantitativeGame& g);

// The unique rational in the open interval (lo, hi) with denominator at most
// max_den, found by Stern-Brocot mediant descent. Throws ReconstructionError
// when no such rational exists.
Rational reconstruct_rational(const Rational& lo, const Rational& hi, const BigInt& max_den);

// Runs VI for the full budget and reconstructs the exact optimal cost.
OptimalCostResult vi_optimize(const QuantitativeGame& g, const Deadline& deadline = {});

// VI-based satisficing: early interval exit when v leaves the error-bound
// interval, otherwise exact comparison after reconstruction. The answer is
// the comparison of the optimal cost with v for any player/relation pair.
SatisficeAnswer vi_satisfice(const QuantitativeGame& g, const Rational& v, Relation rel,
                             Player player, const Deadline& deadline = {});

}  // namespace dsg

#endif  // DSG_VALUE_ITERATION_HPP
