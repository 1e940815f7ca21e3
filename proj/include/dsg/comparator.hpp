#ifndef DSG_COMPARATOR_HPP
#define DSG_COMPARATOR_HPP

#include <string>
#include <utility>
#include <vector>

#include "dsg/exact_arith.hpp"
#include "dsg/relation.hpp"

namespace dsg {

enum class CompKind { Safety, CoSafety };

enum class PrefixClass { BadPrefix, VeryGoodPrefix, Undetermined };

// Deterministic safety/co-safety comparator automaton over the alphabet
// {-mu, ..., mu}, accepting exactly the weight sequences whose discounted
// sum relates to the threshold by the stored relation. States track the
// integer recoverable gap relative to the threshold's digit expansion; two
// absorbing sinks absorb decided prefixes.
struct Comparator {
  static constexpr int kBad = 0;
  static constexpr int kVeryGood = 1;

  BigInt mu;
  BigInt d;  // integer discount factor, >= 2
  Rational threshold;
  Relation rel = Relation::Leq;
  CompKind kind = CompKind::Safety;

  // Folded digit lasso the construction ran on (for LEQ/LT the digits of v,
  // for GEQ/GT the digits of -v).
  std::vector<BigInt> digits;  // prefix followed by period
  int period_start = 0;        // index of the first period digit

  int init = 0;
  std::vector<char> accepting;        // per state id
  std::vector<std::vector<int>> trans;  // [state][letter + mu]
  // Gap value and digit index per non-sink state (ids >= 2).
  std::vector<std::pair<BigInt, int>> gap_of;

  int state_count() const { return static_cast<int>(accepting.size()); }
  int alphabet_size() const { return 2 * mu.convert_to<int>() + 1; }
  int digit_count() const { return static_cast<int>(digits.size()); }

  // Deterministic successor; throws AlphabetError when |letter| > mu.
  int next(int state, const BigInt& letter) const;
};

// Upper/lower gap bounds at digit index i:
//   U_i = DSum(post(v,i))/d + mu/(d-1),  L_i = U_i - 2*mu/(d-1)
// where post(v,i) is the digit tail starting at index i+1.
std::pair<Rational, Rational> comparator_bounds(const BigInt& mu, const BigInt& d,
                                                const ThresholdDigits& t, int i);

// The deterministic safety comparator for DSum <= v (the one audited
// construction; the other relations are exact symmetries of it).
Comparator build_leq(const BigInt& mu, const BigInt& d, const ThresholdDigits& t);

// Comparator for an arbitrary relation. GEQ negates the alphabet against
// threshold -v; LT/GT flip the acceptance predicate. Throws
// UnsupportedDiscountError for non-integer discount factors.
Comparator build_comparator(const BigInt& mu, const DiscountFactor& d, const Rational& v,
                            Relation rel);

// Flip accepting/non-accepting; safety <-> co-safety.
Comparator complement(const Comparator& c);

// Classification of a finite prefix against the <= language.
PrefixClass classify_prefix(const BigInt& mu, const BigInt& d, const ThresholdDigits& t,
                            const WeightSeq& w);

// Exact acceptance of the ultimately-periodic word head . loop^omega.
bool membership_lasso(const Comparator& c, const LassoSeq& l);

// Line-oriented dump (header, states, transitions).
std::string dump_comparator(const Comparator& c);

}  // namespace dsg

#endif  // DSG_COMPARATOR_HPP
