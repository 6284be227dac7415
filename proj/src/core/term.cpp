#include <algorithm>

#include "dx/core/fact.hpp"
#include "dx/core/term.hpp"

namespace dx {

std::string Term::str() const {
  switch (kind_) {
    case TermKind::OpenNull:
      return "?o" + std::to_string(id_);
    case TermKind::ClosedNull:
      return "?c" + std::to_string(id_);
    default:
      return name();
  }
}

bool Fact::is_ground() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.is_constant(); });
}

bool Fact::has_variables() const {
  return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Fact::str() const {
  std::string out = relation_name();
  out += '(';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += terms[i].str();
  }
  out += ')';
  return out;
}

std::size_t FactHash::operator()(const Fact& f) const noexcept {
  std::size_t h = std::hash<SymbolId>{}(f.relation);
  TermHash th;
  for (const auto& t : f.terms) h = h * 1000003u ^ th(t);
  return h;
}

}  // namespace dx
