#ifndef DSG_RATIONAL_HPP
#define DSG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "dsg/errors.hpp"

namespace dsg {

// Arbitrary-precision integers and rationals. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the rest of the library relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

// floor(r) as an integer (round toward minus infinity).
inline BigInt floor_rational(const Rational& r) {
  BigInt n = num(r);
  BigInt d = den(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

// Parses "P/Q" or a bare integer "N". Q must be positive.
Rational parse_rational(const std::string& text);

// Canonical "P/Q" rendering, denominator always printed ("2" -> "2/1").
std::string format_pq(const Rational& r);

// Compact rendering: integer without "/1", otherwise "P/Q".
std::string format_rational(const Rational& r);

}  // namespace dsg

#endif  // DSG_RATIONAL_HPP
