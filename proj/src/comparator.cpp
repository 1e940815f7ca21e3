#include "dsg/comparator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "dsg/errors.hpp"

namespace dsg {

namespace {

struct DigitLasso {
  std::vector<BigInt> flat;  // prefix then period
  int period_start = 0;

  int last() const { return static_cast<int>(flat.size()) - 1; }
  int period_len() const { return static_cast<int>(flat.size()) - period_start; }

  int next_index(int i) const { return i == last() ? period_start : i + 1; }

  // Maps an unbounded word position onto its digit index.
  int wrap(long pos) const {
    if (pos <= last()) return static_cast<int>(pos);
    return period_start + static_cast<int>((pos - period_start) % period_len());
  }

  // Discounted sum of the digit word starting at index `start`.
  Rational tail_dsum(int start, const DiscountFactor& d) const {
    LassoSeq l;
    l.head.assign(flat.begin() + start, flat.end());
    l.loop.assign(flat.begin() + period_start, flat.end());
    return dsum_lasso(l, d);
  }
};

DigitLasso as_lasso(const ThresholdDigits& t) {
  DigitLasso dl;
  dl.flat = t.prefix;
  dl.flat.insert(dl.flat.end(), t.period.begin(), t.period.end());
  dl.period_start = static_cast<int>(t.prefix.size());
  return dl;
}

// Folds prefix digits that merely repeat the periodic part into the period
// (rotating it), so equal-behavior digit indices coincide. Shrinks the
// construction without changing the represented value.
DigitLasso folded(const ThresholdDigits& t) {
  std::vector<BigInt> prefix = t.prefix;
  std::vector<BigInt> period = t.period;
  while (!prefix.empty() && prefix.back() == period.back()) {
    period.insert(period.begin(), period.back());
    period.pop_back();
    prefix.pop_back();
  }
  DigitLasso dl;
  dl.flat = prefix;
  dl.flat.insert(dl.flat.end(), period.begin(), period.end());
  dl.period_start = static_cast<int>(prefix.size());
  return dl;
}

std::pair<Rational, Rational> bounds_at(const DigitLasso& dl, const BigInt& mu,
                                        const DiscountFactor& d, int i) {
  int start = dl.next_index(i);
  Rational margin(mu, d.p - d.q);  // mu/(d-1) for integer d
  Rational center = dl.tail_dsum(start, d) / Rational(d.p);
  return {center + margin, center - margin};
}

}  // namespace

int Comparator::next(int state, const BigInt& letter) const {
  if (letter < -mu || letter > mu)
    throw AlphabetError("letter " + letter.str() + " outside alphabet bound " + mu.str());
  int col = (letter + mu).convert_to<int>();
  return trans[static_cast<size_t>(state)][static_cast<size_t>(col)];
}

std::pair<Rational, Rational> comparator_bounds(const BigInt& mu, const BigInt& d,
                                                const ThresholdDigits& t, int i) {
  DigitLasso dl = as_lasso(t);
  if (i < 0 || i > dl.last()) throw Error("digit index out of range");
  DiscountFactor df = DiscountFactor::make(d, 1);
  auto [u, l] = bounds_at(dl, mu, df, i);
  return {u, l};
}

Comparator build_leq(const BigInt& mu, const BigInt& d, const ThresholdDigits& t) {
  if (d < 2) throw UnsupportedDiscountError("comparator requires an integer discount >= 2");
  if (mu < 1) throw ValidationError("comparator bound mu must be >= 1");
  DiscountFactor df = DiscountFactor::make(d, 1);
  DigitLasso dl = folded(t);
  int n = dl.last();

  std::vector<BigInt> floor_u(static_cast<size_t>(n + 1));
  std::vector<BigInt> floor_l(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    auto [u, l] = bounds_at(dl, mu, df, i);
    floor_u[static_cast<size_t>(i)] = floor_rational(u);
    floor_l[static_cast<size_t>(i)] = floor_rational(l);
  }

  Comparator c;
  c.mu = mu;
  c.d = d;
  c.threshold = threshold_value(t, df);
  c.rel = Relation::Leq;
  c.kind = CompKind::Safety;
  c.digits = dl.flat;
  c.period_start = dl.period_start;

  int width = c.alphabet_size();
  auto add_state = [&](bool acc) {
    c.accepting.push_back(acc ? 1 : 0);
    c.trans.emplace_back(static_cast<size_t>(width), -1);
    return c.state_count() - 1;
  };
  int bad = add_state(false);      // kBad
  int good = add_state(true);      // kVeryGood
  for (int a = 0; a < width; ++a) {
    c.trans[static_cast<size_t>(bad)][static_cast<size_t>(a)] = bad;
    c.trans[static_cast<size_t>(good)][static_cast<size_t>(a)] = good;
  }

  std::map<std::pair<BigInt, int>, int> ids;
  std::deque<int> work;
  auto intern = [&](const BigInt& gap_value, int idx) {
    auto key = std::make_pair(gap_value, idx);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = add_state(true);
    c.gap_of.push_back(key);  // gap_of[id - 2]
    ids.emplace(key, id);
    work.push_back(id);
    return id;
  };

  c.gap_of.clear();
  // Out-of-range thresholds degenerate: the empty word is already decided.
  Rational reach = max_dsum_bound(mu, df);
  if (c.threshold < -reach) {
    c.init = bad;
  } else if (c.threshold >= reach) {
    c.init = good;
  } else {
    c.init = intern(0, 0);
  }
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    auto [gap_value, idx] = c.gap_of[static_cast<size_t>(id - 2)];
    const BigInt& digit = dl.flat[static_cast<size_t>(idx)];
    for (int col = 0; col < width; ++col) {
      BigInt letter = BigInt(col) - mu;
      // New gap after consuming digit idx, decided against the source
      // index's window (U_i, L_i use the digit tail from idx + 1).
      BigInt t_gap = d * gap_value + letter - digit;
      int dst;
      if (t_gap > floor_u[static_cast<size_t>(idx)]) {
        dst = bad;
      } else if (t_gap <= floor_l[static_cast<size_t>(idx)]) {
        dst = good;
      } else {
        dst = intern(t_gap, dl.next_index(idx));
      }
      c.trans[static_cast<size_t>(id)][static_cast<size_t>(col)] = dst;
    }
  }
  return c;
}

Comparator complement(const Comparator& c) {
  Comparator out = c;
  for (auto& a : out.accepting) a = a ? 0 : 1;
  out.kind = c.kind == CompKind::Safety ? CompKind::CoSafety : CompKind::Safety;
  return out;
}

Comparator build_comparator(const BigInt& mu, const DiscountFactor& d, const Rational& v,
                            Relation rel) {
  if (!d.is_integer())
    throw UnsupportedDiscountError(
        "comparator construction requires an integer discount factor");
  switch (rel) {
    case Relation::Leq:
      return build_leq(mu, d.p, to_threshold_digits(v, d));
    case Relation::Geq: {
      // DSum(A) >= v iff DSum(-A) <= -v: build for -v, then negate the
      // alphabet by reversing each transition row.
      Comparator c = build_leq(mu, d.p, to_threshold_digits(-v, d));
      for (auto& row : c.trans) std::reverse(row.begin(), row.end());
      c.rel = Relation::Geq;
      c.threshold = v;
      return c;
    }
    case Relation::Gt: {
      Comparator c = complement(build_comparator(mu, d, v, Relation::Leq));
      c.rel = Relation::Gt;
      return c;
    }
    case Relation::Lt: {
      Comparator c = complement(build_comparator(mu, d, v, Relation::Geq));
      c.rel = Relation::Lt;
      return c;
    }
  }
  throw Error("unreachable");
}

PrefixClass classify_prefix(const BigInt& mu, const BigInt& d, const ThresholdDigits& t,
                            const WeightSeq& w) {
  DigitLasso dl = as_lasso(t);
  DiscountFactor df = DiscountFactor::make(d, 1);
  Rational g = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < -mu || w[i] > mu)
      throw AlphabetError("letter " + w[i].str() + " outside alphabet bound " + mu.str());
    const BigInt& digit = dl.flat[static_cast<size_t>(dl.wrap(static_cast<long>(i)))];
    g = gap_step(g, w[i] - digit, df);
  }
  int start = dl.wrap(static_cast<long>(w.size()));
  Rational margin(mu, d - 1);
  Rational center = dl.tail_dsum(start, df) / Rational(d);
  if (g > center + margin) return PrefixClass::BadPrefix;
  if (g <= center - margin) return PrefixClass::VeryGoodPrefix;
  return PrefixClass::Undetermined;
}

bool membership_lasso(const Comparator& c, const LassoSeq& l) {
  if (l.loop.empty()) throw InvalidLassoError("lasso loop must be non-empty");
  bool rejected_seen = !c.accepting[static_cast<size_t>(c.init)];
  bool accepted_seen = static_cast<bool>(c.accepting[static_cast<size_t>(c.init)]);
  int state = c.init;
  for (const BigInt& a : l.head) {
    state = c.next(state, a);
    if (c.accepting[static_cast<size_t>(state)]) {
      accepted_seen = true;
    } else {
      rejected_seen = true;
    }
  }
  // Deterministic run: once a (state, loop offset) pair repeats the run is
  // periodic and nothing new can happen.
  std::map<std::pair<int, size_t>, char> visited;
  size_t off = 0;
  while (!visited.count({state, off})) {
    visited[{state, off}] = 1;
    state = c.next(state, l.loop[off]);
    if (c.accepting[static_cast<size_t>(state)]) {
      accepted_seen = true;
    } else {
      rejected_seen = true;
    }
    off = (off + 1) % l.loop.size();
  }
  // Safety: non-accepting states are sinks, so any rejection is final.
  // Co-safety: accepting states are sinks, so any acceptance is final.
  return c.kind == CompKind::Safety ? !rejected_seen : accepted_seen;
}

std::string dump_comparator(const Comparator& c) {
  std::ostringstream os;
  os << "comparator mu=" << c.mu << " d=" << c.d << " rel=" << relation_name(c.rel)
     << " v=" << format_pq(c.threshold)
     << " kind=" << (c.kind == CompKind::Safety ? "safety" : "cosafety") << '\n';
  for (int s = 0; s < c.state_count(); ++s) {
    os << "state " << s << ' ';
    if (s == Comparator::kBad) {
      os << "BAD";
    } else if (s == Comparator::kVeryGood) {
      os << "VERYGOOD";
    } else {
      const auto& [g, idx] = c.gap_of[static_cast<size_t>(s - 2)];
      os << "gap=" << g << " idx=" << idx;
    }
    os << " accepting=" << (c.accepting[static_cast<size_t>(s)] ? 1 : 0) << '\n';
  }
  for (int s = 0; s < c.state_count(); ++s) {
    for (int col = 0; col < c.alphabet_size(); ++col) {
      os << "trans " << s << ' ' << (BigInt(col) - c.mu) << ' '
         << c.trans[static_cast<size_t>(s)][static_cast<size_t>(col)] << '\n';
    }
  }
  return os.str();
}

}  // namespace dsg
