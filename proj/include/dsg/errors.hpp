#ifndef DSG_ERRORS_HPP
#define DSG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dsg {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (game files, DPA files, rationals, ...).
struct ParseError : Error {
  using Error::Error;
};

// Structurally well-formed input violating a model invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Operation requires an integer discount factor.
struct UnsupportedDiscountError : Error {
  using Error::Error;
};

// A lasso with an empty loop.
struct InvalidLassoError : Error {
  using Error::Error;
};

// Letter or weight outside the comparator alphabet.
struct AlphabetError : Error {
  using Error::Error;
};

// No rational with a small enough denominator in the interval.
struct ReconstructionError : Error {
  using Error::Error;
};

// Exhaustive verification refused: instance too large.
struct VerificationTooLargeError : Error {
  using Error::Error;
};

// Cooperative deadline expired.
struct TimeoutError : Error {
  using Error::Error;
};

}  // namespace dsg

#endif  // DSG_ERRORS_HPP
