#ifndef DSG_BENCH_HPP
#define DSG_BENCH_HPP

#include <ostream>
#include <string>
#include <vector>

#include "dsg/game.hpp"

namespace dsg {

struct BenchRow {
  std::string instance;
  int states = 0;
  long edges = 0;
  std::string method;  // VI_OPT | VI_SAT | COMP_SAT | DISAGREE
  std::string answer;  // "P/Q" for VI_OPT, "YES"/"NO" for satisficing
  long iterations_or_product_states = 0;
  double millis = 0;
  bool timed_out = false;
};

struct BenchOptions {
  double timeout_s = 0;  // 0 = no per-instance timeout
  int jobs = 1;
};

// Fixed 200-state game for the threshold-sensitivity suite. Play from the
// initial state is forced: a 14-step zero-weight spine into a 2-cycle with
// weights 3, 1, giving optimal cost 7/24576; decoy states off the played
// path carry weights +-5 so the weight bound is 5.
QuantitativeGame robustness_fixture();

// Optimal cost of the fixture and the swept thresholds 7/24576 +- 5/2^j,
// j = 0..8 (below-W values first, then above-W, each towards W).
Rational robustness_cost();
std::vector<Rational> robustness_thresholds();

// Builtin suites: "scaling" (gen_scalable i=4..12), "robustness" (fixture
// with the threshold sweep), "equivalence" (random-game cross-check of the
// two satisficers). Any other name is a directory of .game files.
std::vector<BenchRow> run_suite(const std::string& suite, const BenchOptions& opts);

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace dsg

#endif  // DSG_BENCH_HPP
