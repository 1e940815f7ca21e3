#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsg/bench.hpp"
#include "dsg/errors.hpp"
#include "dsg/product.hpp"
#include "dsg/temporal.hpp"
#include "dsg/value_iteration.hpp"

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitUnsupported = 4;

struct Common {
  double timeout_s = 0;
  bool as_json = false;
};

dsg::Deadline deadline_of(const Common& c) {
  if (c.timeout_s <= 0) return dsg::Deadline{};
  return dsg::Deadline(std::chrono::milliseconds(static_cast<long>(c.timeout_s * 1000)));
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Top-level report keys are identical for every method; method-specific
// extras live under "details".
void emit_json(const std::string& command, const std::string& method, const std::string& answer,
               long iterations_or_product_states, double millis, const json& details) {
  json report;
  report["command"] = command;
  report["method"] = method;
  report["answer"] = answer;
  report["iterations_or_product_states"] = iterations_or_product_states;
  report["millis"] = millis;
  report["details"] = details;
  std::cout << report.dump() << '\n';
}

void write_strategy_file(const std::string& path, const dsg::TwoPlayerGame& product,
                         const dsg::Strategy& strategy) {
  std::ofstream out(path);
  if (!out) throw dsg::ParseError("cannot open strategy output file '" + path + "'");
  for (int u = 0; u < product.num_states; ++u) {
    auto it = strategy.choice.find(u);
    if (it == strategy.choice.end()) continue;
    int dst = product.succ[static_cast<size_t>(u)][static_cast<size_t>(it->second)];
    out << "move " << product.game_state[static_cast<size_t>(u)] << ' '
        << product.comp_state[static_cast<size_t>(u)] << " -> "
        << product.game_state[static_cast<size_t>(dst)] << '\n';
  }
}

int cmd_optimize(const std::string& game_file, const Common& common) {
  dsg::QuantitativeGame g = dsg::load_game_file(game_file);
  auto t0 = Clock::now();
  dsg::OptimalCostResult r = dsg::vi_optimize(g, deadline_of(common));
  double ms = ms_since(t0);
  std::string w = dsg::format_pq(r.optimal_cost);
  if (common.as_json) {
    json details;
    details["k_max"] = r.budget.k_max;
    details["interval_lo"] = dsg::format_pq(r.lo);
    details["interval_hi"] = dsg::format_pq(r.hi);
    emit_json("optimize", "VI_OPT", w, r.iterations_used, ms, details);
  } else {
    std::cout << "W = " << w << '\n';
    std::cout << "iterations = " << r.iterations_used << '\n';
    std::cout << "k_max = " << r.budget.k_max << '\n';
  }
  return kExitOk;
}

int cmd_satisfice(const std::string& game_file, const std::string& threshold,
                  const std::string& relation, const std::string& player,
                  const std::string& method, const std::string& strategy_out,
                  const Common& common) {
  dsg::QuantitativeGame g = dsg::load_game_file(game_file);
  dsg::Rational v = dsg::parse_rational(threshold);
  dsg::Relation rel = dsg::parse_relation(relation);
  dsg::Player pl = player == "max" ? dsg::Player::Max : dsg::Player::Min;
  auto t0 = Clock::now();
  if (method == "vi") {
    dsg::SatisficeAnswer a = dsg::vi_satisfice(g, v, rel, pl, deadline_of(common));
    double ms = ms_since(t0);
    std::string answer = a.holds ? "YES" : "NO";
    std::string decided =
        a.decided_by == dsg::Decided::IntervalExit ? "interval-exit" : "budget-exhausted";
    if (common.as_json) {
      json details;
      details["decided_by"] = decided;
      emit_json("satisfice", "VI_SAT", answer, a.iterations_used, ms, details);
    } else {
      std::cout << answer << '\n';
      std::cout << "iterations = " << a.iterations_used << '\n';
      std::cout << "decided_by = " << decided << '\n';
    }
    return kExitOk;
  }
  dsg::CompSatisficeResult r = dsg::comp_satisfice(g, v, rel, pl, deadline_of(common));
  double ms = ms_since(t0);
  std::string answer = r.holds ? "YES" : "NO";
  if (!strategy_out.empty() && r.holds && r.strategy) {
    write_strategy_file(strategy_out, r.product, *r.strategy);
  }
  if (common.as_json) {
    json details;
    details["product_edges"] = r.product_edges;
    emit_json("satisfice", "COMP_SAT", answer, r.product_states, ms, details);
  } else {
    std::cout << answer << '\n';
    std::cout << "product_states = " << r.product_states << '\n';
    std::cout << "product_edges = " << r.product_edges << '\n';
  }
  return kExitOk;
}

int cmd_comparator(long mu, const std::string& discount, const std::string& threshold,
                   const std::string& relation, const std::string& dump_file,
                   const Common& common) {
  dsg::Rational d = dsg::parse_rational(discount);
  dsg::DiscountFactor df = dsg::DiscountFactor::make(dsg::num(d), dsg::den(d));
  dsg::Rational v = dsg::parse_rational(threshold);
  dsg::Relation rel = dsg::parse_relation(relation);
  auto t0 = Clock::now();
  dsg::Comparator c = dsg::build_comparator(dsg::BigInt(mu), df, v, rel);
  double ms = ms_since(t0);
  if (!dump_file.empty()) {
    std::ofstream out(dump_file);
    if (!out) throw dsg::ParseError("cannot open dump file '" + dump_file + "'");
    out << dsg::dump_comparator(c);
  }
  if (common.as_json) {
    json details;
    details["digits"] = c.digit_count();
    details["period"] = c.digit_count() - c.period_start;
    details["kind"] = c.kind == dsg::CompKind::Safety ? "safety" : "cosafety";
    emit_json("comparator", "COMP_SAT", std::to_string(c.state_count()), c.state_count(), ms,
              details);
  } else {
    std::cout << "states = " << c.state_count() << '\n';
    std::cout << "digits = " << c.digit_count() << " (prefix " << c.period_start << ", period "
              << c.digit_count() - c.period_start << ")\n";
  }
  return kExitOk;
}

int cmd_gen(const std::string& family, int states, long mu, int branching, std::uint64_t seed,
            int n, int i, const std::string& out_file) {
  dsg::QuantitativeGame g;
  if (family == "random") {
    g = dsg::gen_random(states, dsg::BigInt(mu), branching, seed);
  } else if (family == "lowerbound") {
    g = dsg::gen_lower_bound(n);
  } else {
    g = dsg::gen_scalable(i);
  }
  std::string text = dsg::serialize_game(g);
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) throw dsg::ParseError("cannot open output file '" + out_file + "'");
    out << text;
  }
  return kExitOk;
}

int cmd_bench(const std::string& suite, double timeout_s, const std::string& csv_file, int jobs) {
  dsg::BenchOptions opts;
  opts.timeout_s = timeout_s;
  opts.jobs = jobs;
  std::vector<dsg::BenchRow> rows = dsg::run_suite(suite, opts);
  if (csv_file.empty()) {
    dsg::write_csv(std::cout, rows);
  } else {
    std::ofstream out(csv_file);
    if (!out) throw dsg::ParseError("cannot open CSV output file '" + csv_file + "'");
    dsg::write_csv(out, rows);
  }
  return kExitOk;
}

int cmd_temporal(const std::string& game_file, const std::string& labels_file,
                 const std::string& dpa_file, const std::string& threshold,
                 const std::string& relation, const std::string& player, const Common& common) {
  dsg::QuantitativeGame g = dsg::load_game_file(game_file);
  std::vector<std::string> ap;
  dsg::Dpa a = dsg::parse_dpa(dsg::load_text_file(dpa_file), ap);
  dsg::Labeling lab = dsg::parse_labeling(dsg::load_text_file(labels_file), ap, g.num_states);
  dsg::Rational v = dsg::parse_rational(threshold);
  dsg::Relation rel = dsg::parse_relation(relation);
  dsg::Player pl = player == "max" ? dsg::Player::Max : dsg::Player::Min;
  auto t0 = Clock::now();
  dsg::TemporalResult r = dsg::satisfice_with_goal(g, lab, a, v, rel, pl, deadline_of(common));
  double ms = ms_since(t0);
  std::string answer = r.holds ? "YES" : "NO";
  if (common.as_json) {
    json details;
    details["parity_edges"] = r.parity_edges;
    emit_json("temporal", "TEMPORAL", answer, r.parity_states, ms, details);
  } else {
    std::cout << answer << '\n';
    std::cout << "parity_states = " << r.parity_states << '\n';
    std::cout << "parity_edges = " << r.parity_edges << '\n';
  }
  return kExitOk;
}

int default_jobs() {
  const char* env = std::getenv("DSG_JOBS");
  if (!env) return 1;
  int j = std::atoi(env);
  return j >= 1 ? j : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for discounted-sum games: optimization, satisficing "
               "(value iteration or comparator automata), and temporal goals"};
  app.require_subcommand(1);

  Common common;
  std::string game_file, threshold = "0", relation = "leq", player = "min";
  std::string method = "vi", strategy_out, dump_file, discount = "2", out_file, csv_file;
  std::string family, suite = "scaling";
  long mu = 1;
  int states = 4, branching = 2, n = 1, i = 4, jobs = default_jobs();
  std::uint64_t seed = 0;
  double bench_timeout = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", common.as_json, "emit a single JSON report object");
    cmd->add_option("--timeout", common.timeout_s, "cooperative timeout in seconds");
  };

  CLI::App* opt = app.add_subcommand("optimize", "compute the optimal cost W exactly");
  opt->add_option("game", game_file, "game file")->required();
  add_common(opt);

  CLI::App* sat = app.add_subcommand("satisfice", "decide whether the cost relation is forceable");
  sat->add_option("game", game_file, "game file")->required();
  sat->add_option("--threshold", threshold, "threshold P/Q")->required();
  sat->add_option("--relation", relation, "leq|geq|lt|gt")->required();
  sat->add_option("--player", player, "max|min (canonical pairs: min with leq/lt, max with geq/gt)")
      ->check(CLI::IsMember({"max", "min"}))
      ->required();
  sat->add_option("--method", method, "vi|comparator")
      ->check(CLI::IsMember({"vi", "comparator"}));
  sat->add_option("--strategy-out", strategy_out, "write the winning strategy when the answer is YES");
  add_common(sat);

  CLI::App* cmp = app.add_subcommand("comparator", "build a comparator automaton");
  cmp->add_option("--mu", mu, "weight bound")->required();
  cmp->add_option("--discount", discount, "integer discount factor")->required();
  cmp->add_option("--threshold", threshold, "threshold P/Q")->required();
  cmp->add_option("--relation", relation, "leq|geq|lt|gt")->required();
  cmp->add_option("--dump", dump_file, "dump the automaton to a file");
  add_common(cmp);

  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark game");
  gen->add_option("family", family, "random|lowerbound|scalable")
      ->check(CLI::IsMember({"random", "lowerbound", "scalable"}))
      ->required();
  gen->add_option("--states", states, "state count (random)");
  gen->add_option("--mu", mu, "weight bound (random)");
  gen->add_option("--branching", branching, "extra edges per state (random)");
  gen->add_option("--seed", seed, "RNG seed (random)");
  gen->add_option("--n", n, "family parameter (lowerbound: 6n+1 states)");
  gen->add_option("--i", i, "family parameter (scalable: 3*2^i states)");
  gen->add_option("--out", out_file, "output file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite, "scaling|robustness|equivalence or a directory of .game files");
  bench->add_option("--timeout", bench_timeout, "per-instance timeout in seconds");
  bench->add_option("--csv", csv_file, "CSV output file (default stdout)");
  bench->add_option("--jobs", jobs, "parallel instances (default $DSG_JOBS or 1)");

  std::string labels_file, dpa_file;
  CLI::App* tmp = app.add_subcommand("temporal", "satisficing under a parity-automaton goal");
  tmp->add_option("game", game_file, "game file")->required();
  tmp->add_option("--labels", labels_file, "state labeling file")->required();
  tmp->add_option("--dpa", dpa_file, "deterministic parity automaton file")->required();
  tmp->add_option("--threshold", threshold, "threshold P/Q")->required();
  tmp->add_option("--relation", relation, "leq|geq|lt|gt")->required();
  tmp->add_option("--player", player, "max|min")->check(CLI::IsMember({"max", "min"}))->required();
  add_common(tmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (opt->parsed()) return cmd_optimize(game_file, common);
    if (sat->parsed())
      return cmd_satisfice(game_file, threshold, relation, player, method, strategy_out, common);
    if (cmp->parsed()) return cmd_comparator(mu, discount, threshold, relation, dump_file, common);
    if (gen->parsed()) return cmd_gen(family, states, mu, branching, seed, n, i, out_file);
    if (bench->parsed()) return cmd_bench(suite, bench_timeout, csv_file, jobs);
    if (tmp->parsed())
      return cmd_temporal(game_file, labels_file, dpa_file, threshold, relation, player, common);
  } catch (const dsg::UnsupportedDiscountError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const dsg::TimeoutError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dsg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
