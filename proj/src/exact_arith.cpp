#include "dsg/exact_arith.hpp"

#include <map>
#include <sstream>
#include <utility>

#include "dsg/errors.hpp"

namespace dsg {

DiscountFactor DiscountFactor::make(BigInt p, BigInt q) {
  if (p <= 0 || q <= 0) throw ValidationError("discount factor must be positive");
  BigInt g = boost::multiprecision::gcd(p, q);
  p /= g;
  q /= g;
  if (p <= q) throw ValidationError("discount factor must exceed 1");
  return DiscountFactor{std::move(p), std::move(q)};
}

Rational dsum_finite(const WeightSeq& w, const DiscountFactor& d) {
  // Horner from the back: s_i = w_i + s_{i+1} / d.
  Rational s = 0;
  Rational inv_d(d.q, d.p);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    s = Rational(*it) + s * inv_d;
  }
  return s;
}

Rational dsum_lasso(const LassoSeq& l, const DiscountFactor& d) {
  if (l.loop.empty()) throw InvalidLassoError("lasso loop must be non-empty");
  const auto head_len = static_cast<unsigned>(l.head.size());
  const auto loop_len = static_cast<unsigned>(l.loop.size());
  using boost::multiprecision::pow;
  // d^{|loop|} / (d^{|loop|} - 1) = p^L / (p^L - q^L).
  BigInt pl = pow(d.p, loop_len);
  BigInt ql = pow(d.q, loop_len);
  Rational loop_factor(pl, pl - ql);
  Rational shift(pow(d.q, head_len), pow(d.p, head_len));
  return dsum_finite(l.head, d) + shift * loop_factor * dsum_finite(l.loop, d);
}

Rational dsum_lasso_partial(const LassoSeq& l, const DiscountFactor& d, int depth) {
  WeightSeq unrolled;
  unrolled.reserve(static_cast<size_t>(depth));
  for (int i = 0; i < depth; ++i) {
    if (i < static_cast<int>(l.head.size())) {
      unrolled.push_back(l.head[static_cast<size_t>(i)]);
    } else {
      size_t j = (static_cast<size_t>(i) - l.head.size()) % l.loop.size();
      unrolled.push_back(l.loop[j]);
    }
  }
  return dsum_finite(unrolled, d);
}

Rational gap(const WeightSeq& w, const DiscountFactor& d) {
  // Equivalent to folding gap_step from 0, kept in that form.
  Rational g = 0;
  for (const BigInt& x : w) g = gap_step(g, x, d);
  return g;
}

Rational gap_step(const Rational& g, const BigInt& w, const DiscountFactor& d) {
  return g * d.value() + Rational(w);
}

Rational max_dsum_bound(const BigInt& mu, const DiscountFactor& d) {
  // mu * d/(d-1) = mu * p/(p-q).
  return Rational(mu * d.p, d.p - d.q);
}

ThresholdDigits to_threshold_digits(const Rational& v, const DiscountFactor& d) {
  if (!d.is_integer())
    throw UnsupportedDiscountError("digit expansion requires an integer discount factor");
  ThresholdDigits out;
  BigInt lead = floor_rational(v);
  out.prefix.push_back(lead);
  Rational r = v - Rational(lead);  // in [0, 1)
  // Remainder -> index of the digit produced from it; a repeat closes the
  // period. Remainders have denominator dividing den(v), so this terminates.
  std::map<Rational, size_t> seen;
  std::vector<BigInt> digits;
  for (;;) {
    auto it = seen.find(r);
    if (it != seen.end()) {
      size_t start = it->second;
      out.prefix.insert(out.prefix.end(), digits.begin(),
                        digits.begin() + static_cast<long>(start));
      out.period.assign(digits.begin() + static_cast<long>(start), digits.end());
      break;
    }
    seen.emplace(r, digits.size());
    Rational scaled = r * Rational(d.p);
    BigInt digit = floor_rational(scaled);
    digits.push_back(digit);
    r = scaled - Rational(digit);
  }
  return out;
}

Rational threshold_value(const ThresholdDigits& t, const DiscountFactor& d) {
  LassoSeq l{t.prefix, t.period};
  return dsum_lasso(l, d);
}

}  // namespace dsg
