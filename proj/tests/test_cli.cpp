#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dsg/game.hpp"

// Black-box tests against the installed binary; DSG_BIN_PATH is injected by
// the build.

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(DSG_BIN_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "dsg_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string g1_path() {
  static std::string p = write_file("g1.game",
                                    "discount 2 1\nstates 2\ninit 0\nowner 0 max\nowner 1 min\n"
                                    "edge 0 1 2\nedge 0 0 1\nedge 1 0 0\nedge 1 1 -1\n")
                             .string();
  return p;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("optimize prints the exact cost") {
  RunResult r = run("optimize " + g1_path());
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "W = 2/1");
}

TEST_CASE("exit codes") {
  CHECK(run("optimize " + (scratch() / "no_such.game").string()).status == 3);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("satisfice " + g1_path()).status == 2);  // missing required options

  std::string frac = write_file("frac.game",
                                "discount 3 2\nstates 1\ninit 0\nowner 0 max\nedge 0 0 1\n")
                         .string();
  CHECK(run("satisfice " + frac +
            " --threshold 0 --relation leq --player min --method comparator")
            .status == 4);
  // The same instance is fine under value iteration.
  CHECK(run("satisfice " + frac + " --threshold 3 --relation leq --player min --method vi")
            .status == 0);

  std::string bad = write_file("bad.game", "states 1\n").string();
  CHECK(run("optimize " + bad).status == 3);
}

TEST_CASE("satisfice answers on stdout") {
  for (std::string method : {"vi", "comparator"}) {
    RunResult yes = run("satisfice " + g1_path() +
                        " --threshold 5/2 --relation leq --player min --method " + method);
    CHECK(yes.status == 0);
    CHECK(first_line(yes.out) == "YES");
    RunResult no = run("satisfice " + g1_path() +
                       " --threshold 3 --relation geq --player max --method " + method);
    CHECK(no.status == 0);
    CHECK(first_line(no.out) == "NO");
  }
}

TEST_CASE("comparator construction report") {
  RunResult r = run("comparator --mu 1 --discount 2 --threshold 0 --relation leq");
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "states = 4");

  fs::path dump = scratch() / "cmp.dump";
  CHECK(run("comparator --mu 1 --discount 2 --threshold 0 --relation leq --dump " +
            dump.string())
            .status == 0);
  std::ifstream in(dump);
  std::string header;
  std::getline(in, header);
  CHECK(header == "comparator mu=1 d=2 rel=leq v=0/1 kind=safety");

  CHECK(run("comparator --mu 1 --discount 3/2 --threshold 0 --relation leq").status == 4);
}

TEST_CASE("gen families round-trip through the parser") {
  fs::path out = scratch() / "gen.game";
  CHECK(run("gen scalable --i 3 --out " + out.string()).status == 0);
  dsg::QuantitativeGame g = dsg::load_game_file(out.string());
  CHECK(g.num_states == 24);

  RunResult lb = run("gen lowerbound --n 2");
  CHECK(lb.status == 0);
  CHECK(dsg::parse_game_text(lb.out).num_states == 13);

  RunResult r1 = run("gen random --states 5 --mu 2 --seed 9");
  RunResult r2 = run("gen random --states 5 --mu 2 --seed 9");
  CHECK(r1.out == r2.out);
  CHECK(dsg::parse_game_text(r1.out).num_states == 5);
}

TEST_CASE("bench over a directory emits the fixed CSV header") {
  fs::path dir = scratch() / "suite";
  fs::create_directories(dir);
  std::ofstream(dir / "a.game") << "discount 2 1\nstates 1\ninit 0\nowner 0 max\nedge 0 0 1\n";
  RunResult r = run("bench --suite " + dir.string());
  CHECK(r.status == 0);
  CHECK(first_line(r.out) ==
        "instance,states,edges,method,answer,iterations_or_product_states,millis,timed_out");
  CHECK(r.out.find("\na,1,1,") != std::string::npos);  // rows keyed by file stem
}

TEST_CASE("temporal with a trivial goal agrees with plain satisficing") {
  std::string dpa = write_file("trivial.dpa",
                               "ap a\ndpastates 1\ndpainit 0\ndpaprio 0 0\n"
                               "dpatrans 0 - 0\ndpatrans 0 {a} 0\n")
                        .string();
  std::string labels = write_file("g1.labels", "label 0 {a}\n").string();
  for (auto [v, expect] : {std::pair<std::string, std::string>{"5/2", "YES"}, {"1", "NO"}}) {
    RunResult r = run("temporal " + g1_path() + " --labels " + labels + " --dpa " + dpa +
                      " --threshold " + v + " --relation leq --player min");
    CHECK(r.status == 0);
    CHECK(first_line(r.out) == expect);
  }
}

TEST_CASE("json reports share one top-level shape") {
  std::string dpa = write_file("trivial.dpa",
                               "ap a\ndpastates 1\ndpainit 0\ndpaprio 0 0\n"
                               "dpatrans 0 - 0\ndpatrans 0 {a} 0\n")
                        .string();
  std::string labels = write_file("g1.labels", "label 0 {a}\n").string();
  std::vector<std::string> cmds = {
      "optimize " + g1_path() + " --json",
      "satisfice " + g1_path() + " --threshold 2 --relation leq --player min --method vi --json",
      "satisfice " + g1_path() +
          " --threshold 2 --relation leq --player min --method comparator --json",
      "comparator --mu 1 --discount 2 --threshold 0 --relation leq --json",
      "temporal " + g1_path() + " --labels " + labels + " --dpa " + dpa +
          " --threshold 2 --relation leq --player min --json",
  };
  std::vector<std::string> keys = {"answer", "command", "details",
                                   "iterations_or_product_states", "method", "millis"};
  for (const std::string& c : cmds) {
    RunResult r = run(c);
    REQUIRE(r.status == 0);
    json report = json::parse(r.out);
    std::vector<std::string> got;
    for (auto it = report.begin(); it != report.end(); ++it) got.push_back(it.key());
    std::sort(got.begin(), got.end());
    CHECK(got == keys);
    CHECK(report["millis"].is_number());
  }
}

TEST_CASE("strategy output file lists one move per reachable choice point") {
  fs::path strat = scratch() / "g1.strategy";
  RunResult r = run("satisfice " + g1_path() +
                    " --threshold 5/2 --relation leq --player min --method comparator "
                    "--strategy-out " +
                    strat.string());
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "YES");
  std::ifstream in(strat);
  REQUIRE(in.good());
  std::string line;
  int moves = 0;
  while (std::getline(in, line)) {
    CAPTURE(line);
    CHECK(line.rfind("move ", 0) == 0);
    CHECK(line.find(" -> ") != std::string::npos);
    ++moves;
  }
  CHECK(moves > 0);
}
