#include "dsg/value_iteration.hpp"

#include <optional>

#include "dsg/errors.hpp"

namespace dsg {

namespace {

using boost::multiprecision::pow;

bool is_max(const QuantitativeGame& g, int v) {
  return g.owner[static_cast<size_t>(v)] == Player::Max;
}

}  // namespace

ViState vi_init(const QuantitativeGame& g) {
  ViState s;
  s.k = 1;
  s.shared_den = 1;
  s.numer.resize(static_cast<size_t>(g.num_states));
  for (int v = 0; v < g.num_states; ++v) {
    std::optional<BigInt> best;
    for (int ei : g.out[static_cast<size_t>(v)]) {
      const BigInt& w = g.edges[static_cast<size_t>(ei)].weight;
      if (!best || (is_max(g, v) ? w > *best : w < *best)) best = w;
    }
    s.numer[static_cast<size_t>(v)] = *best;
  }
  return s;
}

ViState vi_step(const QuantitativeGame& g, const ViState& s) {
  // wt_{k+1} = gamma + (q/p) * numer/p^{k-1}  ->  numerator over p^k:
  //   gamma * p^k + q * numer.
  ViState next;
  next.k = s.k + 1;
  next.shared_den = s.shared_den * g.discount.p;
  next.numer.resize(static_cast<size_t>(g.num_states));
  for (int v = 0; v < g.num_states; ++v) {
    std::optional<BigInt> best;
    for (int ei : g.out[static_cast<size_t>(v)]) {
      const GameEdge& e = g.edges[static_cast<size_t>(ei)];
      BigInt cand = e.weight * next.shared_den + g.discount.q * s.numer[static_cast<size_t>(e.dst)];
      if (!best || (is_max(g, v) ? cand > *best : cand < *best)) best = std::move(cand);
    }
    next.numer[static_cast<size_t>(v)] = std::move(*best);
  }
  return next;
}

std::pair<Rational, Rational> vi_interval(const ViState& s, const QuantitativeGame& g) {
  // radius = mu / ((d-1) * d^{k-1}) = mu * q^k / ((p-q) * p^{k-1}).
  const BigInt& p = g.discount.p;
  const BigInt& q = g.discount.q;
  Rational radius(g.mu * pow(q, static_cast<unsigned>(s.k)),
                  (p - q) * pow(p, static_cast<unsigned>(s.k - 1)));
  Rational center = s.wt(g.init);
  return {center - radius, center + radius};
}

IterationBudget iteration_budget(const QuantitativeGame& g) {
  const BigInt& p = g.discount.p;
  const BigInt& q = g.discount.q;
  auto nv = static_cast<unsigned>(g.num_states);
  BigInt pv = pow(p, nv);
  BigInt qv = pow(q, nv);
  IterationBudget b;
  b.bound_w = (pv - qv) * pv;
  b.bound_diff = (pv - qv) * (pv - qv) * pv * pv;
  if (g.mu == 0) {
    b.k_max = 1;
    return b;
  }
  // Least k >= 1 with 2*mu/((d-1)*d^{k-1}) < 1/bound_diff, i.e.
  //   2*mu*bound_diff*q^k < (p-q)*p^{k-1}.
  BigInt lhs_const = 2 * g.mu * b.bound_diff;
  auto satisfied = [&](long k) {
    return lhs_const * pow(q, static_cast<unsigned>(k)) <
           (p - q) * pow(p, static_cast<unsigned>(k - 1));
  };
  long hi = 1;
  while (!satisfied(hi)) hi *= 2;
  long lo = hi / 2;  // lo unsatisfied (or 0)
  while (lo + 1 < hi) {
    long mid = lo + (hi - lo) / 2;
    if (satisfied(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  b.k_max = hi;
  return b;
}

namespace {

// Minimal-denominator rational in the open interval (lo, hi), by the
// continued-fraction form of Stern-Brocot descent.
Rational simplest_in(const Rational& lo, const Rational& hi) {
  BigInt z = floor_rational(lo) + 1;
  if (Rational(z) < hi) return Rational(z);
  // Interval lies strictly inside (z-1, z]; shift to (0, 1] and recurse on
  // reciprocals: x in (a, b) iff 1/x in (1/b, 1/a).
  BigInt t = z - 1;
  Rational a = lo - Rational(t);
  Rational b = hi - Rational(t);
  if (a == 0) {
    BigInt n = floor_rational(Rational(1) / b) + 1;
    return Rational(t) + Rational(1, n);
  }
  Rational r = simplest_in(Rational(1) / b, Rational(1) / a);
  return Rational(t) + Rational(1) / r;
}

}  // namespace

Rational reconstruct_rational(const Rational& lo, const Rational& hi, const BigInt& max_den) {
  if (max_den < 1) throw ReconstructionError("max_den must be positive");
  if (!(lo < hi)) throw ReconstructionError("empty interval");
  Rational best = simplest_in(lo, hi);
  if (den(best) > max_den)
    throw ReconstructionError("no rational with denominator <= " + max_den.str() +
                              " in the interval");
  return best;
}

namespace {

// The optimal cost lies in the closed interval and can sit exactly on an
// endpoint (the error bound is tight, e.g. constant-weight loops), so try
// the endpoints before the
// open-interval descent. The budget keeps the closed width below
// 1/bound_diff, so at most one candidate exists either way.
Rational pick_in_closed(const Rational& lo, const Rational& hi, const BigInt& max_den) {
  if (den(lo) <= max_den) return lo;
  if (den(hi) <= max_den) return hi;
  return reconstruct_rational(lo, hi, max_den);
}

}  // namespace

OptimalCostResult vi_optimize(const QuantitativeGame& g, const Deadline& deadline) {
  OptimalCostResult res;
  res.budget = iteration_budget(g);
  ViState s = vi_init(g);
  while (s.k < res.budget.k_max) {
    deadline.check();
    s = vi_step(g, s);
  }
  auto [lo, hi] = vi_interval(s, g);
  res.lo = lo;
  res.hi = hi;
  res.iterations_used = s.k;
  if (g.mu == 0) {
    // Degenerate interval; the value vector is exact.
    res.optimal_cost = s.wt(g.init);
  } else {
    res.optimal_cost = pick_in_closed(lo, hi, res.budget.bound_w);
  }
  return res;
}

SatisficeAnswer vi_satisfice(const QuantitativeGame& g, const Rational& v, Relation rel,
                             Player /*player*/, const Deadline& deadline) {
  // The optimal cost is simultaneously what MAX can force from below and MIN
  // from above, so every player/relation pair reduces to comparing W with v.
  IterationBudget budget = iteration_budget(g);
  ViState s = vi_init(g);
  for (;;) {
    deadline.check();
    auto [lo, hi] = vi_interval(s, g);
    if (v < lo || v > hi) {
      // W is inside [lo, hi], so the order of W and v is decided.
      bool w_above_v = v < lo;
      bool holds = w_above_v ? (rel == Relation::Geq || rel == Relation::Gt)
                             : (rel == Relation::Leq || rel == Relation::Lt);
      return SatisficeAnswer{holds, s.k, Decided::IntervalExit};
    }
    if (s.k >= budget.k_max) break;
    s = vi_step(g, s);
  }
  auto [lo, hi] = vi_interval(s, g);
  Rational w = g.mu == 0 ? s.wt(g.init) : pick_in_closed(lo, hi, budget.bound_w);
  return SatisficeAnswer{rel_holds(w, rel, v), s.k, Decided::BudgetExhausted};
}

}  // namespace dsg
