#include "quadineq/kernel.hpp"

namespace quadineq {

std::string_view to_string(ResidualPath path) {
  switch (path) {
    case ResidualPath::edge:
      return "edge";
    case ResidualPath::expanded:
      return "expanded";
    case ResidualPath::lemma:
      return "lemma";
  }
  return "?";
}

std::string_view to_string(TermGroup group) {
  switch (group) {
    case TermGroup::X:
      return "X";
    case TermGroup::Y:
      return "Y";
    case TermGroup::W:
      return "W";
  }
  return "?";
}

std::string_view to_string(SignVariant sign) { return sign == SignVariant::plus ? "plus" : "minus"; }

}  // namespace quadineq
