#include "dsg/product.hpp"

#include <deque>

#include "dsg/errors.hpp"

namespace dsg {

TwoPlayerGame make_product(const QuantitativeGame& g, const Comparator& c, Player protagonist,
                           const Deadline& deadline) {
  if (!g.discount.is_integer() || g.discount.p != c.d)
    throw UnsupportedDiscountError("comparator discount does not match the game");
  if (g.mu > c.mu)
    throw AlphabetError("game weight bound " + g.mu.str() +
                        " exceeds comparator alphabet bound " + c.mu.str());
  TwoPlayerGame prod;
  prod.condition = c.kind == CompKind::Safety ? WinCondition::Safety : WinCondition::Reachability;

  auto key = [&](int v, int s) {
    return static_cast<long>(v) * c.state_count() + s;
  };
  std::unordered_map<long, int> ids;
  std::deque<int> work;
  auto intern = [&](int v, int s) {
    auto it = ids.find(key(v, s));
    if (it != ids.end()) return it->second;
    int id = prod.num_states++;
    ids.emplace(key(v, s), id);
    prod.owner.push_back(g.owner[static_cast<size_t>(v)] == protagonist ? Role::Protagonist
                                                                        : Role::Antagonist);
    prod.succ.emplace_back();
    prod.weight.emplace_back();
    prod.game_state.push_back(v);
    prod.comp_state.push_back(s);
    bool sink_flag = c.kind == CompKind::Safety ? !c.accepting[static_cast<size_t>(s)]
                                                : static_cast<bool>(c.accepting[static_cast<size_t>(s)]);
    prod.special.push_back(sink_flag ? 1 : 0);
    work.push_back(id);
    return id;
  };

  prod.init = intern(g.init, c.init);
  long processed = 0;
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    if (++processed % 100000 == 0) deadline.check();
    int v = prod.game_state[static_cast<size_t>(id)];
    int s = prod.comp_state[static_cast<size_t>(id)];
    for (int ei : g.out[static_cast<size_t>(v)]) {
      const GameEdge& e = g.edges[static_cast<size_t>(ei)];
      int s2 = c.next(s, e.weight);
      int dst = intern(e.dst, s2);
      prod.succ[static_cast<size_t>(id)].push_back(dst);
      prod.weight[static_cast<size_t>(id)].push_back(e.weight);
    }
  }
  return prod;
}

namespace {

// Attractor of `target` for `who`, with the attracting player's strategy
// (edge index forced during attraction).
std::pair<std::vector<char>, Strategy> attractor(const TwoPlayerGame& g, Role who,
                                                 const std::vector<char>& target) {
  int n = g.num_states;
  std::vector<std::vector<std::pair<int, int>>> preds(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) {
    const auto& su = g.succ[static_cast<size_t>(u)];
    for (size_t j = 0; j < su.size(); ++j) {
      preds[static_cast<size_t>(su[j])].emplace_back(u, static_cast<int>(j));
    }
  }
  std::vector<char> attr = target;
  std::vector<int> cnt(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) cnt[static_cast<size_t>(u)] = static_cast<int>(g.succ[static_cast<size_t>(u)].size());
  Strategy strat;
  std::deque<int> work;
  for (int u = 0; u < n; ++u) {
    if (attr[static_cast<size_t>(u)]) work.push_back(u);
  }
  while (!work.empty()) {
    int w = work.front();
    work.pop_front();
    for (auto [u, ei] : preds[static_cast<size_t>(w)]) {
      if (attr[static_cast<size_t>(u)]) continue;
      if (g.owner[static_cast<size_t>(u)] == who) {
        attr[static_cast<size_t>(u)] = 1;
        strat.choice[u] = ei;
        work.push_back(u);
      } else if (--cnt[static_cast<size_t>(u)] == 0) {
        attr[static_cast<size_t>(u)] = 1;
        work.push_back(u);
      }
    }
  }
  return {attr, strat};
}

}  // namespace

std::pair<std::vector<char>, Strategy> solve_reachability(const TwoPlayerGame& g) {
  if (g.condition != WinCondition::Reachability)
    throw Error("solve_reachability requires a reachability condition");
  return attractor(g, Role::Protagonist, g.special);
}

std::pair<std::vector<char>, Strategy> solve_safety(const TwoPlayerGame& g) {
  if (g.condition != WinCondition::Safety)
    throw Error("solve_safety requires a safety condition");
  auto [attr, unused] = attractor(g, Role::Antagonist, g.special);
  std::vector<char> winning(static_cast<size_t>(g.num_states));
  for (int u = 0; u < g.num_states; ++u) winning[static_cast<size_t>(u)] = attr[static_cast<size_t>(u)] ? 0 : 1;
  Strategy strat;
  for (int u = 0; u < g.num_states; ++u) {
    if (!winning[static_cast<size_t>(u)] || g.owner[static_cast<size_t>(u)] != Role::Protagonist)
      continue;
    const auto& su = g.succ[static_cast<size_t>(u)];
    int best = -1;
    for (size_t j = 0; j < su.size(); ++j) {
      if (!winning[static_cast<size_t>(su[j])]) continue;
      if (best < 0 || su[j] < su[static_cast<size_t>(best)]) best = static_cast<int>(j);
    }
    // Complement of an attractor is a trap: some successor stays inside.
    strat.choice[u] = best;
  }
  return {winning, strat};
}

CompSatisficeResult comp_satisfice(const QuantitativeGame& g, const Rational& v, Relation rel,
                                   Player /*player*/, const Deadline& deadline) {
  if (!g.discount.is_integer())
    throw UnsupportedDiscountError(
        "comparator-based satisficing requires an integer discount factor; use the VI method");
  // The guarantee-holder for {leq, lt} is MIN, for {geq, gt} MAX; solving
  // with that protagonist makes the answer the comparison of the optimal
  // cost with v for any requested player.
  Player protagonist = (rel == Relation::Leq || rel == Relation::Lt) ? Player::Min : Player::Max;
  BigInt mu = g.mu < 1 ? BigInt(1) : g.mu;
  Comparator c = build_comparator(mu, g.discount, v, rel);
  CompSatisficeResult res;
  res.product = make_product(g, c, protagonist, deadline);
  res.product_states = res.product.num_states;
  res.product_edges = res.product.num_edges();
  auto [winning, strat] = res.product.condition == WinCondition::Safety
                              ? solve_safety(res.product)
                              : solve_reachability(res.product);
  res.holds = winning[static_cast<size_t>(res.product.init)] != 0;
  if (res.holds) res.strategy = std::move(strat);
  return res;
}

bool verify_strategy(const TwoPlayerGame& product, const Strategy& strategy,
                     const DiscountFactor& d, const Rational& v, Relation rel) {
  constexpr double kMaxProfiles = 1e6;
  std::vector<int> ant_states;
  double profiles = 1;
  for (int u = 0; u < product.num_states; ++u) {
    if (product.owner[static_cast<size_t>(u)] == Role::Antagonist &&
        product.succ[static_cast<size_t>(u)].size() > 1) {
      ant_states.push_back(u);
      profiles *= static_cast<double>(product.succ[static_cast<size_t>(u)].size());
      if (profiles > kMaxProfiles)
        throw VerificationTooLargeError("too many antagonist strategy profiles");
    }
  }
  std::vector<int> odo(ant_states.size(), 0);
  auto choice_of = [&](int u) {
    if (product.owner[static_cast<size_t>(u)] == Role::Protagonist) {
      auto it = strategy.choice.find(u);
      return it == strategy.choice.end() ? 0 : it->second;
    }
    for (size_t i = 0; i < ant_states.size(); ++i) {
      if (ant_states[i] == u) return odo[i];
    }
    return 0;  // single-successor antagonist state
  };
  for (;;) {
    // Walk the unique play under this profile and cut it into a lasso.
    std::vector<int> order(static_cast<size_t>(product.num_states), -1);
    LassoSeq lasso;
    std::vector<BigInt> weights;
    int u = product.init;
    int steps = 0;
    while (order[static_cast<size_t>(u)] < 0) {
      order[static_cast<size_t>(u)] = steps++;
      int j = choice_of(u);
      weights.push_back(product.weight[static_cast<size_t>(u)][static_cast<size_t>(j)]);
      u = product.succ[static_cast<size_t>(u)][static_cast<size_t>(j)];
    }
    int loop_start = order[static_cast<size_t>(u)];
    lasso.head.assign(weights.begin(), weights.begin() + loop_start);
    lasso.loop.assign(weights.begin() + loop_start, weights.end());
    if (!rel_holds(dsum_lasso(lasso, d), rel, v)) return false;
    // Next antagonist profile.
    size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] < static_cast<int>(product.succ[static_cast<size_t>(ant_states[i])].size()))
        break;
      odo[i] = 0;
    }
    if (i == odo.size()) return true;
  }
}

}  // namespace dsg
