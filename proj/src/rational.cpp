#include "dsg/rational.hpp"

#include <sstream>

#include "dsg/relation.hpp"

namespace dsg {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  BigInt n, d = 1;
  try {
    if (slash == std::string::npos) {
      n = BigInt(text);
    } else {
      n = BigInt(text.substr(0, slash));
      d = BigInt(text.substr(slash + 1));
    }
  } catch (const std::runtime_error& e) {
    throw ParseError("bad rational '" + text + "': " + e.what());
  }
  if (d <= 0) throw ParseError("rational denominator must be positive: " + text);
  return Rational(n, d);
}

std::string format_pq(const Rational& r) {
  std::ostringstream os;
  os << num(r) << '/' << den(r);
  return os.str();
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  if (den(r) == 1) {
    os << num(r);
  } else {
    os << num(r) << '/' << den(r);
  }
  return os.str();
}

Relation parse_relation(const std::string& text) {
  if (text == "leq" || text == "<=") return Relation::Leq;
  if (text == "geq" || text == ">=") return Relation::Geq;
  if (text == "lt" || text == "<") return Relation::Lt;
  if (text == "gt" || text == ">") return Relation::Gt;
  throw ParseError("unknown relation '" + text + "' (expected leq|geq|lt|gt)");
}

}  // namespace dsg
