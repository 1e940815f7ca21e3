#include "dsg/temporal.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "dsg/errors.hpp"

namespace dsg {

namespace {

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

// `{a,b}`, `{}`, or `-` against the declared AP universe.
unsigned parse_label_set(const std::string& tok, const std::vector<std::string>& ap, int lineno) {
  if (tok == "-") return 0;
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    syntax_error(lineno, "label set must be '{a,b}' or '-'");
  unsigned mask = 0;
  std::string body = tok.substr(1, tok.size() - 2);
  std::istringstream bs(body);
  std::string name;
  while (std::getline(bs, name, ',')) {
    if (name.empty()) syntax_error(lineno, "empty proposition name in label set");
    auto it = std::find(ap.begin(), ap.end(), name);
    if (it == ap.end()) syntax_error(lineno, "unknown proposition '" + name + "'");
    mask |= 1u << (it - ap.begin());
  }
  return mask;
}

}  // namespace

Dpa parse_dpa(const std::string& text, std::vector<std::string>& ap_out) {
  Dpa a;
  std::vector<std::string> ap;
  bool have_ap = false, have_states = false, have_init = false;
  struct PendingTrans {
    int src;
    std::string label;
    int dst;
    int lineno;
  };
  std::vector<PendingTrans> pending;
  std::vector<std::pair<int, int>> prios;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "ap") {
      std::string name;
      ap.clear();
      while (ls >> name) ap.push_back(name);
      if (ap.size() > 16) syntax_error(lineno, "at most 16 atomic propositions supported");
      have_ap = true;
    } else if (kw == "dpastates") {
      if (!(ls >> a.num_states)) syntax_error(lineno, "expected: dpastates <n>");
      have_states = true;
    } else if (kw == "dpainit") {
      if (!(ls >> a.init)) syntax_error(lineno, "expected: dpainit <id>");
      have_init = true;
    } else if (kw == "dpaprio") {
      int id, p;
      if (!(ls >> id >> p)) syntax_error(lineno, "expected: dpaprio <id> <priority>");
      if (p < 0) syntax_error(lineno, "priorities must be non-negative");
      prios.emplace_back(id, p);
    } else if (kw == "dpatrans") {
      int src, dst;
      std::string label;
      if (!(ls >> src >> label >> dst))
        syntax_error(lineno, "expected: dpatrans <src> {a,b}|- <dst>");
      pending.push_back(PendingTrans{src, label, dst, lineno});
    } else {
      syntax_error(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_ap) throw ParseError("missing 'ap' line");
  if (!have_states) throw ParseError("missing 'dpastates' line");
  if (!have_init) throw ParseError("missing 'dpainit' line");
  if (a.num_states <= 0) throw ValidationError("automaton must have at least one state");
  if (a.init < 0 || a.init >= a.num_states)
    throw ValidationError("dpainit state out of range");
  int width = 1 << ap.size();
  a.prio.assign(static_cast<size_t>(a.num_states), 0);
  a.trans.assign(static_cast<size_t>(a.num_states),
                 std::vector<int>(static_cast<size_t>(width), -1));
  for (auto& [id, p] : prios) {
    if (id < 0 || id >= a.num_states)
      throw ValidationError("dpaprio line references bad state id " + std::to_string(id));
    a.prio[static_cast<size_t>(id)] = p;
  }
  for (auto& t : pending) {
    if (t.src < 0 || t.src >= a.num_states || t.dst < 0 || t.dst >= a.num_states)
      syntax_error(t.lineno, "dpatrans references a bad state id");
    unsigned mask = parse_label_set(t.label, ap, t.lineno);
    a.trans[static_cast<size_t>(t.src)][mask] = t.dst;
  }
  for (int s = 0; s < a.num_states; ++s) {
    for (int m = 0; m < width; ++m) {
      if (a.trans[static_cast<size_t>(s)][static_cast<size_t>(m)] < 0)
        throw ValidationError("automaton is not total: state " + std::to_string(s) +
                              " misses a transition on some label set");
    }
  }
  ap_out = std::move(ap);
  return a;
}

Labeling parse_labeling(const std::string& text, const std::vector<std::string>& ap,
                        int num_game_states) {
  Labeling lab;
  lab.ap = ap;
  lab.mask.assign(static_cast<size_t>(num_game_states), 0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw != "label") syntax_error(lineno, "unknown keyword '" + kw + "'");
    int state;
    std::string set;
    if (!(ls >> state >> set)) syntax_error(lineno, "expected: label <game-state> {a,b}|-");
    if (state < 0 || state >= num_game_states)
      syntax_error(lineno, "label references bad state id " + std::to_string(state));
    lab.mask[static_cast<size_t>(state)] = parse_label_set(set, ap, lineno);
  }
  return lab;
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ParityGame parity_product(const QuantitativeGame& g, const Labeling& lab, const Comparator& c,
                          const Dpa& a, Player protagonist, const Deadline& deadline) {
  if (static_cast<int>(lab.mask.size()) != g.num_states)
    throw ValidationError("labeling must cover every game state");
  TwoPlayerGame prod = make_product(g, c, protagonist, deadline);
  int max_prio = 0;
  for (int p : a.prio) max_prio = std::max(max_prio, p);
  // Odd priority dominating the automaton's: seen infinitely often it loses
  // for the protagonist, so BAD regions (safety) and never-met obligations
  // (co-safety) are losing while the rest of the play is judged by the DPA.
  int p_lose = max_prio % 2 == 0 ? max_prio + 1 : max_prio + 2;

  ParityGame pg;
  auto key = [&](int u, int q) { return static_cast<long>(u) * a.num_states + q; };
  std::unordered_map<long, int> ids;
  std::deque<int> work;
  auto intern = [&](int u, int q) {
    auto it = ids.find(key(u, q));
    if (it != ids.end()) return it->second;
    int id = pg.num_states++;
    ids.emplace(key(u, q), id);
    pg.owner.push_back(prod.owner[static_cast<size_t>(u)]);
    pg.succ.emplace_back();
    pg.weight.emplace_back();
    pg.prod_state.push_back(u);
    pg.dpa_state.push_back(q);
    pg.game_state.push_back(prod.game_state[static_cast<size_t>(u)]);
    bool decided = prod.special[static_cast<size_t>(u)] != 0;
    bool losing_region = prod.condition == WinCondition::Safety ? decided : !decided;
    pg.prio.push_back(losing_region ? p_lose : a.prio[static_cast<size_t>(q)]);
    work.push_back(id);
    return id;
  };

  pg.init = intern(prod.init, a.init);
  long processed = 0;
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    if (++processed % 100000 == 0) deadline.check();
    int u = pg.prod_state[static_cast<size_t>(id)];
    int q = pg.dpa_state[static_cast<size_t>(id)];
    // The automaton reads the label of the game state the play is leaving.
    unsigned m = lab.mask[static_cast<size_t>(prod.game_state[static_cast<size_t>(u)])];
    if (m >= static_cast<unsigned>(1 << lab.ap.size()) ||
        static_cast<size_t>(m) >= a.trans[static_cast<size_t>(q)].size())
      throw ValidationError("label set outside the automaton alphabet");
    int q2 = a.trans[static_cast<size_t>(q)][m];
    const auto& su = prod.succ[static_cast<size_t>(u)];
    const auto& wu = prod.weight[static_cast<size_t>(u)];
    for (size_t j = 0; j < su.size(); ++j) {
      int dst = intern(su[j], q2);  // may reallocate pg's vectors
      pg.succ[static_cast<size_t>(id)].push_back(dst);
      pg.weight[static_cast<size_t>(id)].push_back(wu[j]);
    }
  }
  return pg;
}

namespace {

// Attractor of `target` for `who` within `alive`; records the attracting
// player's forced moves into `strat`.
std::vector<char> parity_attractor(const ParityGame& pg,
                                   const std::vector<std::vector<std::pair<int, int>>>& preds,
                                   const std::vector<char>& alive, Role who,
                                   std::vector<char> target, Strategy& strat) {
  std::vector<int> cnt(static_cast<size_t>(pg.num_states), 0);
  for (int u = 0; u < pg.num_states; ++u) {
    if (!alive[static_cast<size_t>(u)]) continue;
    const auto& su = pg.succ[static_cast<size_t>(u)];
    for (int w : su) {
      if (alive[static_cast<size_t>(w)]) ++cnt[static_cast<size_t>(u)];
    }
  }
  std::deque<int> work;
  for (int u = 0; u < pg.num_states; ++u) {
    if (alive[static_cast<size_t>(u)] && target[static_cast<size_t>(u)]) work.push_back(u);
  }
  while (!work.empty()) {
    int w = work.front();
    work.pop_front();
    for (auto [u, ei] : preds[static_cast<size_t>(w)]) {
      if (!alive[static_cast<size_t>(u)] || target[static_cast<size_t>(u)]) continue;
      if (pg.owner[static_cast<size_t>(u)] == who) {
        target[static_cast<size_t>(u)] = 1;
        if (who == Role::Protagonist) strat.choice[u] = ei;
        work.push_back(u);
      } else if (--cnt[static_cast<size_t>(u)] == 0) {
        target[static_cast<size_t>(u)] = 1;
        work.push_back(u);
      }
    }
  }
  return target;
}

struct ZielonkaSolver {
  const ParityGame& pg;
  std::vector<std::vector<std::pair<int, int>>> preds;

  explicit ZielonkaSolver(const ParityGame& game) : pg(game) {
    preds.resize(static_cast<size_t>(pg.num_states));
    for (int u = 0; u < pg.num_states; ++u) {
      const auto& su = pg.succ[static_cast<size_t>(u)];
      for (size_t j = 0; j < su.size(); ++j) {
        preds[static_cast<size_t>(su[j])].emplace_back(u, static_cast<int>(j));
      }
    }
  }

  // Protagonist winning region of the subgame `alive`, recording a
  // protagonist strategy on it.
  std::vector<char> solve(const std::vector<char>& alive, Strategy& strat) {
    int n = pg.num_states;
    int top = -1;
    for (int u = 0; u < n; ++u) {
      if (alive[static_cast<size_t>(u)]) top = std::max(top, pg.prio[static_cast<size_t>(u)]);
    }
    std::vector<char> win_prot(static_cast<size_t>(n), 0);
    if (top < 0) return win_prot;
    Role sigma = top % 2 == 0 ? Role::Protagonist : Role::Antagonist;

    std::vector<char> tops(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      if (alive[static_cast<size_t>(u)] && pg.prio[static_cast<size_t>(u)] == top)
        tops[static_cast<size_t>(u)] = 1;
    }
    Strategy attr_strat;
    std::vector<char> attr = parity_attractor(pg, preds, alive, sigma, tops, attr_strat);
    std::vector<char> rest = alive;
    for (int u = 0; u < n; ++u) {
      if (attr[static_cast<size_t>(u)]) rest[static_cast<size_t>(u)] = 0;
    }
    Strategy sub_strat;
    std::vector<char> sub_prot = solve(rest, sub_strat);

    bool opponent_wins_some = false;
    for (int u = 0; u < n; ++u) {
      if (!rest[static_cast<size_t>(u)]) continue;
      bool prot_here = sub_prot[static_cast<size_t>(u)] != 0;
      if (prot_here != (sigma == Role::Protagonist)) {
        opponent_wins_some = true;
        break;
      }
    }

    if (!opponent_wins_some) {
      // sigma wins the whole subgame.
      if (sigma == Role::Protagonist) {
        for (int u = 0; u < n; ++u) {
          if (alive[static_cast<size_t>(u)]) win_prot[static_cast<size_t>(u)] = 1;
        }
        strat.choice.insert(sub_strat.choice.begin(), sub_strat.choice.end());
        strat.choice.insert(attr_strat.choice.begin(), attr_strat.choice.end());
        for (int u = 0; u < n; ++u) {
          // Top-priority protagonist states: any move staying alive works.
          if (!tops[static_cast<size_t>(u)] ||
              pg.owner[static_cast<size_t>(u)] != Role::Protagonist ||
              strat.choice.count(u))
            continue;
          const auto& su = pg.succ[static_cast<size_t>(u)];
          for (size_t j = 0; j < su.size(); ++j) {
            if (alive[static_cast<size_t>(su[j])]) {
              strat.choice[u] = static_cast<int>(j);
              break;
            }
          }
        }
      }
      return win_prot;
    }

    // The opponent of sigma wins part of the smaller subgame; their whole
    // winning region extends by its attractor.
    std::vector<char> opp_win(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      if (!rest[static_cast<size_t>(u)]) continue;
      bool prot_here = sub_prot[static_cast<size_t>(u)] != 0;
      if (prot_here != (sigma == Role::Protagonist)) opp_win[static_cast<size_t>(u)] = 1;
    }
    Role opp = sigma == Role::Protagonist ? Role::Antagonist : Role::Protagonist;
    Strategy opp_attr_strat;
    std::vector<char> b = parity_attractor(pg, preds, alive, opp, opp_win, opp_attr_strat);
    std::vector<char> rest2 = alive;
    for (int u = 0; u < n; ++u) {
      if (b[static_cast<size_t>(u)]) rest2[static_cast<size_t>(u)] = 0;
    }
    Strategy strat2;
    std::vector<char> prot2 = solve(rest2, strat2);
    for (int u = 0; u < n; ++u) {
      if (prot2[static_cast<size_t>(u)]) win_prot[static_cast<size_t>(u)] = 1;
    }
    strat.choice.insert(strat2.choice.begin(), strat2.choice.end());
    if (opp == Role::Protagonist) {
      for (int u = 0; u < n; ++u) {
        if (b[static_cast<size_t>(u)]) win_prot[static_cast<size_t>(u)] = 1;
      }
      strat.choice.insert(sub_strat.choice.begin(), sub_strat.choice.end());
      strat.choice.insert(opp_attr_strat.choice.begin(), opp_attr_strat.choice.end());
    }
    return win_prot;
  }
};

}  // namespace

std::pair<std::vector<char>, Strategy> solve_parity(const ParityGame& pg) {
  ZielonkaSolver solver(pg);
  std::vector<char> alive(static_cast<size_t>(pg.num_states), 1);
  Strategy strat;
  std::vector<char> winning = solver.solve(alive, strat);
  // Keep only choices on the protagonist's final winning region.
  for (auto it = strat.choice.begin(); it != strat.choice.end();) {
    if (!winning[static_cast<size_t>(it->first)]) {
      it = strat.choice.erase(it);
    } else {
      ++it;
    }
  }
  return {winning, strat};
}

TemporalResult satisfice_with_goal(const QuantitativeGame& g, const Labeling& lab, const Dpa& a,
                                   const Rational& v, Relation rel, Player /*player*/,
                                   const Deadline& deadline) {
  if (!g.discount.is_integer())
    throw UnsupportedDiscountError(
        "temporal satisficing requires an integer discount factor");
  Player protagonist = (rel == Relation::Leq || rel == Relation::Lt) ? Player::Min : Player::Max;
  BigInt mu = g.mu < 1 ? BigInt(1) : g.mu;
  Comparator c = build_comparator(mu, g.discount, v, rel);
  TemporalResult res;
  res.parity = parity_product(g, lab, c, a, protagonist, deadline);
  res.parity_states = res.parity.num_states;
  res.parity_edges = res.parity.num_edges();
  auto [winning, strat] = solve_parity(res.parity);
  res.holds = winning[static_cast<size_t>(res.parity.init)] != 0;
  if (res.holds) res.strategy = std::move(strat);
  return res;
}

bool verify_parity_strategy(const ParityGame& pg, const Strategy& strategy,
                            const DiscountFactor& d, const Rational& v, Relation rel) {
  constexpr double kMaxProfiles = 1e6;
  std::vector<int> ant_states;
  double profiles = 1;
  for (int u = 0; u < pg.num_states; ++u) {
    if (pg.owner[static_cast<size_t>(u)] == Role::Antagonist &&
        pg.succ[static_cast<size_t>(u)].size() > 1) {
      ant_states.push_back(u);
      profiles *= static_cast<double>(pg.succ[static_cast<size_t>(u)].size());
      if (profiles > kMaxProfiles)
        throw VerificationTooLargeError("too many antagonist strategy profiles");
    }
  }
  std::vector<int> odo(ant_states.size(), 0);
  auto choice_of = [&](int u) {
    if (pg.owner[static_cast<size_t>(u)] == Role::Protagonist) {
      auto it = strategy.choice.find(u);
      return it == strategy.choice.end() ? 0 : it->second;
    }
    for (size_t i = 0; i < ant_states.size(); ++i) {
      if (ant_states[i] == u) return odo[i];
    }
    return 0;
  };
  for (;;) {
    std::vector<int> order(static_cast<size_t>(pg.num_states), -1);
    std::vector<int> visited;
    std::vector<BigInt> weights;
    int u = pg.init;
    int steps = 0;
    while (order[static_cast<size_t>(u)] < 0) {
      order[static_cast<size_t>(u)] = steps++;
      visited.push_back(u);
      int j = choice_of(u);
      weights.push_back(pg.weight[static_cast<size_t>(u)][static_cast<size_t>(j)]);
      u = pg.succ[static_cast<size_t>(u)][static_cast<size_t>(j)];
    }
    int loop_start = order[static_cast<size_t>(u)];
    LassoSeq lasso;
    lasso.head.assign(weights.begin(), weights.begin() + loop_start);
    lasso.loop.assign(weights.begin() + loop_start, weights.end());
    if (!rel_holds(dsum_lasso(lasso, d), rel, v)) return false;
    int max_prio = 0;
    for (size_t i = static_cast<size_t>(loop_start); i < visited.size(); ++i) {
      max_prio = std::max(max_prio, pg.prio[static_cast<size_t>(visited[i])]);
    }
    if (max_prio % 2 != 0) return false;
    size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] < static_cast<int>(pg.succ[static_cast<size_t>(ant_states[i])].size())) break;
      odo[i] = 0;
    }
    if (i == odo.size()) return true;
  }
}

}  // namespace dsg
