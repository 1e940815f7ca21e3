#ifndef DSG_EXACT_ARITH_HPP
#define DSG_EXACT_ARITH_HPP

#include <vector>

#include "dsg/rational.hpp"

namespace dsg {

// Discount factor d = p/q > 1, stored in lowest terms.
struct DiscountFactor {
  BigInt p;
  BigInt q;

  // Normalizes and validates; throws ValidationError unless p/q > 1.
  static DiscountFactor make(BigInt p, BigInt q);

  bool is_integer() const { return q == 1; }
  Rational value() const { return Rational(p, q); }

  bool operator==(const DiscountFactor& o) const { return p == o.p && q == o.q; }
};

// Finite integer weight sequence; may be empty.
using WeightSeq = std::vector<BigInt>;

// Eventually-periodic weight sequence head . loop^omega.
struct LassoSeq {
  WeightSeq head;
  WeightSeq loop;  // must be non-empty
};

// Eventually-periodic digit expansion of a rational threshold. The first
// prefix digit is floor(v) and may be any integer; every later digit of a
// canonical expansion lies in {0, ..., d-1}.
struct ThresholdDigits {
  std::vector<BigInt> prefix;
  std::vector<BigInt> period;  // non-empty
};

// Sum of w_i / d^i over the finite sequence; empty sequence gives 0.
Rational dsum_finite(const WeightSeq& w, const DiscountFactor& d);

// Exact discounted sum of head . loop^omega via the closed form
//   DSum(head) + d^{-|head|} * d^{|loop|}/(d^{|loop|}-1) * DSum(loop).
// Throws InvalidLassoError on an empty loop.
Rational dsum_lasso(const LassoSeq& l, const DiscountFactor& d);

// Finite partial sum of the lasso unrolled to `depth` letters (test oracle
// helper; exact).
Rational dsum_lasso_partial(const LassoSeq& l, const DiscountFactor& d, int depth);

// Recoverable gap: gap(eps) = 0, gap(W) = d^{|W|-1} * DSum(W).
Rational gap(const WeightSeq& w, const DiscountFactor& d);

// One gap update: d*g + w.
Rational gap_step(const Rational& g, const BigInt& w, const DiscountFactor& d);

// mu * d / (d - 1): bound on |DSum| of any sequence with letters in [-mu, mu].
Rational max_dsum_bound(const BigInt& mu, const DiscountFactor& d);

// Canonical greedy base-d expansion of v; requires an integer discount
// factor (throws UnsupportedDiscountError otherwise). The discounted sum of
// the result reproduces v exactly.
ThresholdDigits to_threshold_digits(const Rational& v, const DiscountFactor& d);

// Discounted sum of the digit lasso (prefix as head, period as loop).
Rational threshold_value(const ThresholdDigits& t, const DiscountFactor& d);

}  // namespace dsg

#endif  // DSG_EXACT_ARITH_HPP
