#ifndef DSG_RELATION_HPP
#define DSG_RELATION_HPP

#include <string>

#include "dsg/rational.hpp"

namespace dsg {

enum class Relation { Leq, Geq, Lt, Gt };

inline bool rel_holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::Leq: return lhs <= rhs;
    case Relation::Geq: return lhs >= rhs;
    case Relation::Lt: return lhs < rhs;
    case Relation::Gt: return lhs > rhs;
  }
  return false;
}

inline std::string relation_name(Relation rel) {
  switch (rel) {
    case Relation::Leq: return "leq";
    case Relation::Geq: return "geq";
    case Relation::Lt: return "lt";
    case Relation::Gt: return "gt";
  }
  return "?";
}

Relation parse_relation(const std::string& text);

}  // namespace dsg

#endif  // DSG_RELATION_HPP
