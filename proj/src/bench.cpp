#include "dsg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "dsg/errors.hpp"
#include "dsg/product.hpp"
#include "dsg/value_iteration.hpp"

namespace dsg {

namespace {

constexpr int kSpineLen = 14;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Deadline make_deadline(double timeout_s) {
  if (timeout_s <= 0) return Deadline{};
  return Deadline(std::chrono::milliseconds(static_cast<long>(timeout_s * 1000)));
}

// Runs `body` (which fills answer/iterations into `row`), repeating very
// short runs a few times so sub-millisecond timings are stable enough for
// slope fits.
template <typename F>
void timed_run(BenchRow& row, double timeout_s, F body) {
  auto t0 = Clock::now();
  try {
    body(make_deadline(timeout_s));
  } catch (const TimeoutError&) {
    row.timed_out = true;
    row.answer = "timeout";
    row.millis = ms_since(t0);
    return;
  } catch (const Error& e) {
    row.answer = std::string("error: ") + e.what();
    row.millis = ms_since(t0);
    return;
  }
  double first = ms_since(t0);
  if (first >= 20) {
    row.millis = first;
    return;
  }
  int reps = 1;
  auto t1 = Clock::now();
  while (reps < 32 && ms_since(t1) < 50) {
    body(make_deadline(timeout_s));
    ++reps;
  }
  row.millis = ms_since(t1) / reps;
}

BenchRow row_for(const std::string& instance, const QuantitativeGame& g,
                 const std::string& method) {
  BenchRow row;
  row.instance = instance;
  row.states = g.num_states;
  row.edges = static_cast<long>(g.edges.size());
  row.method = method;
  return row;
}

BenchRow run_vi_opt(const std::string& instance, const QuantitativeGame& g, double timeout_s) {
  BenchRow row = row_for(instance, g, "VI_OPT");
  timed_run(row, timeout_s, [&](const Deadline& dl) {
    OptimalCostResult r = vi_optimize(g, dl);
    row.answer = format_pq(r.optimal_cost);
    row.iterations_or_product_states = r.iterations_used;
  });
  return row;
}

BenchRow run_vi_sat(const std::string& instance, const QuantitativeGame& g, const Rational& v,
                    Relation rel, Player player, double timeout_s) {
  BenchRow row = row_for(instance, g, "VI_SAT");
  timed_run(row, timeout_s, [&](const Deadline& dl) {
    SatisficeAnswer r = vi_satisfice(g, v, rel, player, dl);
    row.answer = r.holds ? "YES" : "NO";
    row.iterations_or_product_states = r.iterations_used;
  });
  return row;
}

BenchRow run_comp_sat(const std::string& instance, const QuantitativeGame& g, const Rational& v,
                      Relation rel, Player player, double timeout_s) {
  BenchRow row = row_for(instance, g, "COMP_SAT");
  timed_run(row, timeout_s, [&](const Deadline& dl) {
    CompSatisficeResult r = comp_satisfice(g, v, rel, player, dl);
    row.answer = r.holds ? "YES" : "NO";
    row.iterations_or_product_states = r.product_states;
  });
  return row;
}

using Task = std::function<BenchRow()>;

std::vector<BenchRow> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<BenchRow> rows(tasks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) rows[i] = tasks[i]();
    return rows;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      rows[i] = tasks[i]();
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
  pool.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

std::vector<BenchRow> suite_scaling(const BenchOptions& opts) {
  Rational v(3);
  std::vector<Task> tasks;
  for (int i = 4; i <= 12; ++i) {
    auto g = std::make_shared<QuantitativeGame>(gen_scalable(i));
    std::string name = "scalable_" + std::to_string(i);
    tasks.emplace_back([=] { return run_comp_sat(name, *g, v, Relation::Leq, Player::Min,
                                                 opts.timeout_s); });
    tasks.emplace_back([=] { return run_vi_sat(name, *g, v, Relation::Leq, Player::Min,
                                               opts.timeout_s); });
    tasks.emplace_back([=] { return run_vi_opt(name, *g, opts.timeout_s); });
  }
  return run_tasks(tasks, opts.jobs);
}

std::vector<BenchRow> suite_robustness(const BenchOptions& opts) {
  auto g = std::make_shared<QuantitativeGame>(robustness_fixture());
  std::vector<Rational> vs = robustness_thresholds();
  Rational w = robustness_cost();
  std::vector<Task> tasks;
  for (const Rational& v : vs) {
    int j = 0;
    Rational delta = v > w ? v - w : w - v;
    // delta = 5/2^j
    while (Rational(5, BigInt(1) << j) != delta) ++j;
    std::string name = std::string("robustness_") + (v < w ? "below" : "above") + "_j" +
                       std::to_string(j);
    tasks.emplace_back([=] { return run_vi_sat(name, *g, v, Relation::Leq, Player::Min,
                                               opts.timeout_s); });
    tasks.emplace_back([=] { return run_comp_sat(name, *g, v, Relation::Leq, Player::Min,
                                                 opts.timeout_s); });
  }
  return run_tasks(tasks, opts.jobs);
}

std::vector<BenchRow> suite_equivalence(const BenchOptions& opts) {
  std::vector<Task> tasks;
  for (int s = 0; s < 100; ++s) {
    auto g = std::make_shared<QuantitativeGame>(
        gen_random(2 + s % 7, 1 + s % 4, 2, 1000 + static_cast<std::uint64_t>(s)));
    Rational w = vi_optimize(*g).optimal_cost;
    std::vector<Rational> vs = {w - Rational(1, 3), w, w + Rational(1, 3)};
    for (size_t i = 0; i < vs.size(); ++i) {
      std::string name = "equiv_s" + std::to_string(s) + "_v" + std::to_string(i);
      Rational v = vs[i];
      tasks.emplace_back([=]() -> BenchRow {
        BenchRow a = run_vi_sat(name, *g, v, Relation::Leq, Player::Min, opts.timeout_s);
        BenchRow b = run_comp_sat(name, *g, v, Relation::Leq, Player::Min, opts.timeout_s);
        if (!a.timed_out && !b.timed_out && a.answer != b.answer) {
          BenchRow d = row_for(name, *g, "DISAGREE");
          d.answer = a.answer + "!=" + b.answer;
          return d;
        }
        return a;
      });
      tasks.emplace_back([=] { return run_comp_sat(name, *g, v, Relation::Leq, Player::Min,
                                                   opts.timeout_s); });
    }
  }
  return run_tasks(tasks, opts.jobs);
}

std::vector<BenchRow> suite_directory(const std::string& dir, const BenchOptions& opts) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError("no such builtin suite or directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".game")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<Task> tasks;
  for (const std::string& f : files) {
    auto g = std::make_shared<QuantitativeGame>(load_game_file(f));
    std::string name = fs::path(f).stem().string();
    Rational v(0);
    tasks.emplace_back([=] { return run_vi_opt(name, *g, opts.timeout_s); });
    tasks.emplace_back([=] { return run_vi_sat(name, *g, v, Relation::Leq, Player::Min,
                                               opts.timeout_s); });
    if (g->discount.is_integer()) {
      tasks.emplace_back([=] { return run_comp_sat(name, *g, v, Relation::Leq, Player::Min,
                                                   opts.timeout_s); });
    }
  }
  return run_tasks(tasks, opts.jobs);
}

}  // namespace

QuantitativeGame robustness_fixture() {
  QuantitativeGame g;
  g.num_states = 200;
  g.init = 0;
  g.discount = DiscountFactor::make(2, 1);
  g.owner.resize(200);
  for (int v = 0; v < 200; ++v) g.owner[static_cast<size_t>(v)] = v % 2 ? Player::Min : Player::Max;
  for (int i = 0; i < kSpineLen; ++i) {
    g.edges.push_back(GameEdge{i, i + 1, BigInt(0)});
  }
  // 2-cycle with weights 3, 1.
  g.edges.push_back(GameEdge{kSpineLen, kSpineLen + 1, BigInt(3)});
  g.edges.push_back(GameEdge{kSpineLen + 1, kSpineLen, BigInt(1)});
  // Decoys: unreachable from the initial state, but they pin the weight
  // bound at 5 and give the solvers a full-size state space.
  for (int v = kSpineLen + 2; v < 200; ++v) {
    g.edges.push_back(GameEdge{v, v - 1, BigInt(5)});
    g.edges.push_back(GameEdge{v, v % kSpineLen, BigInt(-5)});
  }
  g.validate();
  return g;
}

Rational robustness_cost() {
  // 2^{-14} * (d/(d-1)) per 2-cycle: (4/3)*(3 + 1/2)/2^14 = 7/(3*2^13).
  return Rational(7, BigInt(3) << (kSpineLen - 1));
}

std::vector<Rational> robustness_thresholds() {
  Rational w = robustness_cost();
  std::vector<Rational> vs;
  for (int j = 0; j <= 8; ++j) vs.push_back(w - Rational(5, BigInt(1) << j));
  for (int j = 0; j <= 8; ++j) vs.push_back(w + Rational(5, BigInt(1) << j));
  return vs;
}

std::vector<BenchRow> run_suite(const std::string& suite, const BenchOptions& opts) {
  if (suite == "scaling") return suite_scaling(opts);
  if (suite == "robustness") return suite_robustness(opts);
  if (suite == "equivalence") return suite_equivalence(opts);
  return suite_directory(suite, opts);
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "instance,states,edges,method,answer,iterations_or_product_states,millis,timed_out\n";
  for (const BenchRow& r : rows) {
    std::string answer = r.answer;
    std::replace(answer.begin(), answer.end(), ',', ';');
    os << r.instance << ',' << r.states << ',' << r.edges << ',' << r.method << ',' << answer
       << ',' << r.iterations_or_product_states << ',' << r.millis << ','
       << (r.timed_out ? 1 : 0) << '\n';
  }
}

}  // namespace dsg
