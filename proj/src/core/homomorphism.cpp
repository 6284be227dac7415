#include "dx/core/homomorphism.hpp"

#include <algorithm>

namespace dx {
namespace {

template <class Visit>
void search(const std::vector<Fact>& pattern, const Instance& target, const std::set<Term>& frozen,
            Visit&& visit) {
  RelationIndex index(target);
  auto free = [&](const Term& t) { return (t.is_variable() || t.is_null()) && !frozen.count(t); };
  auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& {
    return index.facts(pattern[i].relation);
  };
  Binding binding;
  std::vector<const Fact*> chosen;
  for_each_match(pattern, candidates, free, binding, chosen,
                 [&](const Binding& b, const std::vector<const Fact*>&) { return visit(b); });
}

}  // namespace

std::vector<Homomorphism> find_homomorphisms(const std::vector<Fact>& pattern, const Instance& target,
                                             const std::set<Term>& frozen) {
  std::set<Homomorphism> found;
  search(pattern, target, frozen, [&](const Binding& b) {
    found.insert(b.to_map());
    return true;
  });
  return {found.begin(), found.end()};
}

bool has_homomorphism(const std::vector<Fact>& pattern, const Instance& target, const std::set<Term>& frozen) {
  bool any = false;
  search(pattern, target, frozen, [&](const Binding&) {
    any = true;
    return false;
  });
  return any;
}

Fact substitute(const Homomorphism& h, const Fact& fact) {
  Fact out = fact;
  for (auto& t : out.terms)
    if (auto it = h.find(t); it != h.end()) t = it->second;
  return out;
}

std::vector<Fact> substitute(const Homomorphism& h, const std::vector<Fact>& facts) {
  std::vector<Fact> out;
  out.reserve(facts.size());
  for (const auto& f : facts) out.push_back(substitute(h, f));
  return out;
}

}  // namespace dx
