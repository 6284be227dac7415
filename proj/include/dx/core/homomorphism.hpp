#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dx/core/instance.hpp"

namespace dx {

using Homomorphism = std::map<Term, Term>;

// Small assignment map with undo support for backtracking searches.
class Binding {
 public:
  const Term* find(const Term& from) const {
    for (const auto& [k, v] : entries_)
      if (k == from) return &v;
    return nullptr;
  }
  Term resolve(const Term& t) const {
    const Term* v = find(t);
    return v ? *v : t;
  }
  void bind(const Term& from, const Term& to) { entries_.emplace_back(from, to); }
  std::size_t mark() const { return entries_.size(); }
  void rollback(std::size_t mark) { entries_.resize(mark); }
  const std::vector<std::pair<Term, Term>>& entries() const { return entries_; }
  Homomorphism to_map() const { return {entries_.begin(), entries_.end()}; }

 private:
  std::vector<std::pair<Term, Term>> entries_;
};

// Extends `binding` so that `atom` maps onto `fact`; terms for which `free(t)` is false
// must match literally. Leaves the binding unchanged on failure.
template <class FreePred>
bool match_atom(const Fact& atom, const Fact& fact, Binding& binding, FreePred&& free) {
  if (atom.relation != fact.relation || atom.terms.size() != fact.terms.size()) return false;
  const auto mark = binding.mark();
  for (std::size_t i = 0; i < atom.terms.size(); ++i) {
    const Term& p = atom.terms[i];
    const Term& v = fact.terms[i];
    if (!free(p)) {
      if (p != v) {
        binding.rollback(mark);
        return false;
      }
      continue;
    }
    if (const Term* bound = binding.find(p)) {
      if (*bound != v) {
        binding.rollback(mark);
        return false;
      }
    } else {
      binding.bind(p, v);
    }
  }
  return true;
}

// Depth-first enumeration of matches of `pattern` where atom i ranges over
// `candidates(i)` (a range of const Fact*). `visit(binding, chosen)` returns false to stop.
template <class Candidates, class FreePred, class Visit>
bool for_each_match(const std::vector<Fact>& pattern, Candidates&& candidates, FreePred&& free,
                    Binding& binding, std::vector<const Fact*>& chosen, Visit&& visit,
                    std::size_t depth = 0) {
  if (depth == pattern.size()) return visit(binding, chosen);
  for (const Fact* f : candidates(depth)) {
    const auto mark = binding.mark();
    if (!match_atom(pattern[depth], *f, binding, free)) continue;
    chosen.push_back(f);
    const bool go_on = for_each_match(pattern, candidates, free, binding, chosen, visit, depth + 1);
    chosen.pop_back();
    binding.rollback(mark);
    if (!go_on) return false;
  }
  return true;
}

// All h with h(pattern) ⊆ target; variables and non-frozen nulls of the pattern are free,
// constants and frozen terms map to themselves. Sorted by assignment.
std::vector<Homomorphism> find_homomorphisms(const std::vector<Fact>& pattern, const Instance& target,
                                             const std::set<Term>& frozen = {});

bool has_homomorphism(const std::vector<Fact>& pattern, const Instance& target,
                      const std::set<Term>& frozen = {});

Fact substitute(const Homomorphism& h, const Fact& fact);
std::vector<Fact> substitute(const Homomorphism& h, const std::vector<Fact>& facts);

}  // namespace dx
