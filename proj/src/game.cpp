#include "dsg/game.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "dsg/errors.hpp"

namespace dsg {

void QuantitativeGame::validate() {
  if (num_states <= 0) throw ValidationError("game must have at least one state");
  if (init < 0 || init >= num_states)
    throw ValidationError("init state " + std::to_string(init) + " out of range");
  if (static_cast<int>(owner.size()) != num_states)
    throw ValidationError("owner map must cover every state");
  out.assign(static_cast<size_t>(num_states), {});
  mu = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    const GameEdge& e = edges[i];
    if (e.src < 0 || e.src >= num_states || e.dst < 0 || e.dst >= num_states)
      throw ValidationError("edge " + std::to_string(e.src) + " -> " +
                            std::to_string(e.dst) + " references a bad state id");
    out[static_cast<size_t>(e.src)].push_back(static_cast<int>(i));
    BigInt a = abs(e.weight);
    if (a > mu) mu = a;
  }
  for (int v = 0; v < num_states; ++v) {
    if (out[static_cast<size_t>(v)].empty())
      throw ValidationError("state " + std::to_string(v) + " has no outgoing edge");
  }
}

namespace {

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

QuantitativeGame parse_game(std::istream& in) {
  QuantitativeGame g;
  bool have_discount = false, have_states = false, have_init = false;
  std::vector<std::pair<int, Player>> owners;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "discount") {
      std::string ps, qs;
      if (!(ls >> ps >> qs)) syntax_error(lineno, "expected: discount <p> <q>");
      try {
        g.discount = DiscountFactor::make(BigInt(ps), BigInt(qs));
      } catch (const ValidationError& e) {
        syntax_error(lineno, e.what());
      } catch (const std::runtime_error&) {
        syntax_error(lineno, "bad discount numbers");
      }
      have_discount = true;
    } else if (kw == "states") {
      if (!(ls >> g.num_states)) syntax_error(lineno, "expected: states <n>");
      have_states = true;
    } else if (kw == "init") {
      if (!(ls >> g.init)) syntax_error(lineno, "expected: init <id>");
      have_init = true;
    } else if (kw == "owner") {
      int id;
      std::string who;
      if (!(ls >> id >> who)) syntax_error(lineno, "expected: owner <id> max|min");
      if (who == "max") {
        owners.emplace_back(id, Player::Max);
      } else if (who == "min") {
        owners.emplace_back(id, Player::Min);
      } else {
        syntax_error(lineno, "owner must be 'max' or 'min'");
      }
    } else if (kw == "edge") {
      int src, dst;
      std::string w;
      if (!(ls >> src >> dst >> w)) syntax_error(lineno, "expected: edge <src> <dst> <weight>");
      BigInt weight;
      try {
        weight = BigInt(w);
      } catch (const std::runtime_error&) {
        syntax_error(lineno, "bad edge weight '" + w + "'");
      }
      g.edges.push_back(GameEdge{src, dst, weight});
    } else {
      syntax_error(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_discount) throw ParseError("missing 'discount' line");
  if (!have_states) throw ParseError("missing 'states' line");
  if (!have_init) throw ParseError("missing 'init' line");
  g.owner.assign(static_cast<size_t>(std::max(g.num_states, 0)), Player::Max);
  std::vector<char> covered(static_cast<size_t>(std::max(g.num_states, 0)), 0);
  for (auto& [id, pl] : owners) {
    if (id < 0 || id >= g.num_states)
      throw ValidationError("owner line references bad state id " + std::to_string(id));
    g.owner[static_cast<size_t>(id)] = pl;
    covered[static_cast<size_t>(id)] = 1;
  }
  for (int v = 0; v < g.num_states; ++v) {
    if (!covered[static_cast<size_t>(v)])
      throw ValidationError("state " + std::to_string(v) + " has no owner line");
  }
  g.validate();
  return g;
}

QuantitativeGame parse_game_text(const std::string& text) {
  std::istringstream in(text);
  return parse_game(in);
}

QuantitativeGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  return parse_game(in);
}

std::string serialize_game(const QuantitativeGame& g) {
  std::ostringstream os;
  os << "discount " << g.discount.p << ' ' << g.discount.q << '\n';
  os << "states " << g.num_states << '\n';
  os << "init " << g.init << '\n';
  for (int v = 0; v < g.num_states; ++v) {
    os << "owner " << v << ' '
       << (g.owner[static_cast<size_t>(v)] == Player::Max ? "max" : "min") << '\n';
  }
  std::vector<GameEdge> sorted = g.edges;
  std::stable_sort(sorted.begin(), sorted.end(), [](const GameEdge& a, const GameEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.weight < b.weight;
  });
  for (const GameEdge& e : sorted) {
    os << "edge " << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
  }
  return os.str();
}

QuantitativeGame gen_random(int states, const BigInt& mu, int branching, std::uint64_t seed) {
  if (states < 1 || mu < 1 || branching < 1)
    throw ValidationError("gen_random parameters must be positive");
  std::mt19937_64 rng(seed);
  long mu_l = mu.convert_to<long>();
  std::uniform_int_distribution<long> weight_dist(-mu_l, mu_l);
  std::uniform_int_distribution<int> extra_dist(0, branching - 1);
  std::uniform_int_distribution<int> state_dist(0, states - 1);
  std::uniform_int_distribution<int> coin(0, 1);

  QuantitativeGame g;
  g.num_states = states;
  g.init = 0;
  g.discount = DiscountFactor::make(2, 1);
  g.owner.resize(static_cast<size_t>(states));
  for (int v = 0; v < states; ++v) {
    g.owner[static_cast<size_t>(v)] = coin(rng) ? Player::Max : Player::Min;
  }
  for (int v = 0; v < states; ++v) {
    // Self-loop first so every state keeps an outgoing edge.
    g.edges.push_back(GameEdge{v, v, BigInt(weight_dist(rng))});
    int extras = extra_dist(rng);
    for (int j = 0; j < extras; ++j) {
      g.edges.push_back(GameEdge{v, state_dist(rng), BigInt(weight_dist(rng))});
    }
  }
  g.validate();
  return g;
}

QuantitativeGame gen_lower_bound(int n) {
  if (n < 1) throw ValidationError("gen_lower_bound requires n >= 1");
  using boost::multiprecision::pow;
  QuantitativeGame g;
  g.discount = DiscountFactor::make(2, 1);
  // Unscaled entry weight into the short loop is d^{-3n}; scaling every
  // weight by d^{3n} keeps the optimal strategy and iteration behavior
  // while making all weights integral.
  BigInt scale = pow(BigInt(2), static_cast<unsigned>(3 * n));
  int right_len = 2 * n;
  int left_len = 4 * n;
  g.num_states = 1 + right_len + left_len;
  g.init = 0;
  g.owner.assign(static_cast<size_t>(g.num_states), Player::Max);
  int right0 = 1;
  int left0 = 1 + right_len;
  // Start: weight w (scaled to 1) into the short loop, weight 0 into the
  // long loop.
  g.edges.push_back(GameEdge{0, right0, BigInt(1)});
  g.edges.push_back(GameEdge{0, left0, BigInt(0)});
  for (int i = 0; i < right_len; ++i) {
    int src = right0 + i;
    int dst = right0 + (i + 1) % right_len;
    g.edges.push_back(GameEdge{src, dst, i == 0 ? scale : BigInt(0)});
  }
  for (int i = 0; i < left_len; ++i) {
    int src = left0 + i;
    int dst = left0 + (i + 1) % left_len;
    g.edges.push_back(GameEdge{src, dst, i == 0 ? scale : BigInt(0)});
  }
  g.validate();
  return g;
}

QuantitativeGame gen_scalable(int i) {
  if (i < 1) throw ValidationError("gen_scalable requires i >= 1");
  if (i > 24) throw ValidationError("gen_scalable parameter too large");
  int states = 3 * (1 << i);
  std::mt19937_64 rng(0x5ca1ab1eULL + static_cast<std::uint64_t>(i));
  std::uniform_int_distribution<int> weight_dist(-5, 5);
  std::uniform_int_distribution<int> state_dist(0, states - 1);
  QuantitativeGame g;
  g.num_states = states;
  g.init = 0;
  g.discount = DiscountFactor::make(2, 1);
  g.owner.resize(static_cast<size_t>(states));
  for (int v = 0; v < states; ++v) {
    g.owner[static_cast<size_t>(v)] = (v % 2 == 0) ? Player::Max : Player::Min;
  }
  for (int v = 0; v < states; ++v) {
    // Ring edge keeps the game connected; one chord gives real choices.
    g.edges.push_back(GameEdge{v, (v + 1) % states, BigInt(weight_dist(rng))});
    g.edges.push_back(GameEdge{v, state_dist(rng), BigInt(weight_dist(rng))});
  }
  g.validate();
  return g;
}

}  // namespace dsg
