#include "dx/unification/unifier.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "dx/core/errors.hpp"

namespace dx::unification {

namespace {

// Copied open nulls are variables named "?o<id>#<copy>"; '?' never starts a query variable.
std::optional<std::pair<Term, std::size_t>> original_of(const Term& t) {
  if (!t.is_variable()) return std::nullopt;
  const std::string& name = t.name();
  if (name.size() < 4 || name[0] != '?' || name[1] != 'o') return std::nullopt;
  const auto hash = name.find('#');
  if (hash == std::string::npos) return std::nullopt;
  const auto id = static_cast<std::uint32_t>(std::stoul(name.substr(2, hash - 2)));
  return std::pair{Term::open_null(id), static_cast<std::size_t>(std::stoul(name.substr(hash + 1)))};
}

Term pick_representative(const std::vector<Term>& members) {
  std::optional<Term> closed, copied, other;
  for (const auto& t : members) {
    if (t.is_constant()) return t;
    if (t.is_closed_null()) {
      if (!closed || t < *closed) closed = t;
    } else if (auto orig = original_of(t)) {
      if (!copied || orig->first < *copied) copied = orig->first;
    } else if (!other || t < *other) {
      other = t;
    }
  }
  if (closed) return *closed;
  if (copied) return *copied;
  return *other;
}

struct Search {
  const std::vector<Fact>& pattern;
  const std::vector<Fact>& target;
  bool all_copy_structures;
  std::vector<Unifier>* out;

  std::vector<std::pair<std::size_t, std::size_t>> matching;

  void finish(const TermPartition& partition_in) {
    TermPartition partition = partition_in;
    Unifier u;
    u.matching = matching;
    std::size_t copies = 0;
    for (const auto& [f, c] : matching) copies = std::max(copies, c + 1);
    u.copies = copies;
    std::set<Term> terms;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      const Fact copied = copy_fact(target[matching[i].first], matching[i].second);
      for (std::size_t p = 0; p < copied.terms.size(); ++p) {
        u.equalities.emplace_back(pattern[i].terms[p], copied.terms[p]);
        terms.insert(pattern[i].terms[p]);
        terms.insert(copied.terms[p]);
      }
    }
    std::map<Term, std::vector<Term>> classes;
    for (const auto& t : terms) classes[partition.find(t)].push_back(t);
    for (const auto& [root, members] : classes) {
      const Term rep = pick_representative(members);
      for (const auto& t : members) u.representative[t] = rep;
    }
    out->push_back(std::move(u));
  }

  void run(std::size_t depth, std::size_t copies_used, const TermPartition& partition) {
    if (depth == pattern.size()) {
      finish(partition);
      return;
    }
    const Fact& atom = pattern[depth];
    for (std::size_t k = 0; k < target.size(); ++k) {
      const Fact& fact = target[k];
      if (fact.relation != atom.relation || fact.arity() != atom.arity()) continue;
      const std::size_t first_copy = all_copy_structures ? 0 : depth;
      const std::size_t last_copy = all_copy_structures ? copies_used : depth;
      for (std::size_t c = first_copy; c <= last_copy; ++c) {
        TermPartition next = partition;
        const Fact copied = copy_fact(fact, c);
        bool ok = true;
        for (std::size_t p = 0; p < atom.terms.size() && ok; ++p) ok = next.merge(atom.terms[p], copied.terms[p]);
        if (!ok) continue;
        matching.emplace_back(k, c);
        run(depth + 1, std::max(copies_used, c + 1), next);
        matching.pop_back();
      }
    }
  }
};

std::vector<Unifier> search(const std::vector<Fact>& pattern, const std::vector<Fact>& target,
                            const UnifyOptions& options, bool all_copy_structures) {
  if (pattern.size() > options.max_pattern_atoms)
    throw BudgetExceeded("unification pattern has " + std::to_string(pattern.size()) + " atoms, cap is " +
                         std::to_string(options.max_pattern_atoms));
  std::vector<Unifier> out;
  if (pattern.empty()) return out;
  Search s{pattern, target, all_copy_structures, &out, {}};
  s.run(0, 0, TermPartition{});
  return out;
}

}  // namespace

Term copy_term(const Term& t, std::size_t copy) {
  if (!t.is_open_null()) return t;
  return Term::variable("?o" + std::to_string(t.id()) + "#" + std::to_string(copy));
}

Fact copy_fact(const Fact& f, std::size_t copy) {
  Fact out = f;
  for (auto& t : out.terms) t = copy_term(t, copy);
  return out;
}

Homomorphism Unifier::pattern_map(const std::vector<Fact>& pattern) const {
  Homomorphism h;
  for (const auto& f : pattern)
    for (const auto& t : f.terms)
      if (!t.is_constant())
        if (auto it = representative.find(t); it != representative.end()) h[t] = it->second;
  return h;
}

Homomorphism Unifier::closed_retraction(const std::vector<Fact>& target) const {
  Homomorphism h;
  for (const auto& [k, c] : matching)
    for (const auto& t : target[k].terms)
      if (t.is_closed_null()) h[t] = representative.at(t);
  return h;
}

Homomorphism Unifier::open_retraction(const std::vector<Fact>& target, std::size_t copy) const {
  Homomorphism h;
  for (const auto& [k, c] : matching) {
    if (c != copy) continue;
    for (const auto& t : target[k].terms)
      if (t.is_open_null()) h[t] = representative.at(copy_term(t, copy));
  }
  return h;
}

std::vector<Unifier> mgu_set(const std::vector<Fact>& pattern, const std::vector<Fact>& target,
                             const UnifyOptions& options) {
  return search(pattern, target, options, false);
}

std::vector<Unifier> unifier_closures(const std::vector<Fact>& pattern, const std::vector<Fact>& target,
                                      const UnifyOptions& options) {
  return search(pattern, target, options, true);
}

namespace {

std::set<Term> domain_of(const std::vector<Fact>& facts) {
  std::set<Term> out;
  for (const auto& f : facts) out.insert(f.terms.begin(), f.terms.end());
  return out;
}

// Calls visit(map) for every total map from `keys` into `values`.
template <class Visit>
void for_each_map(const std::vector<Term>& keys, const std::vector<Term>& values, Homomorphism& current,
                  std::size_t i, Visit&& visit) {
  if (i == keys.size()) {
    visit(current);
    return;
  }
  for (const auto& v : values) {
    current[keys[i]] = v;
    for_each_map(keys, values, current, i + 1, visit);
  }
  current.erase(keys[i]);
}

Term image(const Homomorphism& h, const Term& t) {
  auto it = h.find(t);
  return it == h.end() ? t : it->second;
}

}  // namespace

std::vector<ExplicitUnifier> enumerate_unifiers(const std::vector<Fact>& pattern, const std::vector<Fact>& target) {
  std::vector<ExplicitUnifier> out;
  if (pattern.empty() || target.empty()) return out;
  std::set<Term> codomain;
  for (const auto& t : domain_of(target)) codomain.insert(t);
  for (const auto& t : domain_of(pattern))
    if (t.is_constant()) codomain.insert(t);
  const std::vector<Term> values(codomain.begin(), codomain.end());

  std::vector<Term> closed, open;
  for (const auto& t : domain_of(target)) {
    if (t.is_closed_null()) closed.push_back(t);
    if (t.is_open_null()) open.push_back(t);
  }
  std::vector<Term> pattern_vars;
  for (const auto& t : domain_of(pattern))
    if (!t.is_constant()) pattern_vars.push_back(t);

  // All open retractions, ordered; a family of k copies is a strictly increasing index tuple.
  std::vector<Homomorphism> open_maps;
  {
    Homomorphism current;
    for_each_map(open, values, current, 0, [&](const Homomorphism& h) { open_maps.push_back(h); });
  }
  Homomorphism closed_current;
  for_each_map(closed, values, closed_current, 0, [&](const Homomorphism& theta_closed) {
    std::vector<std::size_t> family;
    auto visit_family = [&](auto&& self, std::size_t start) -> void {
      if (!family.empty()) {
        std::set<Fact> image_set;
        for (std::size_t idx : family)
          for (const auto& f : target) {
            Fact g = f;
            for (auto& t : g.terms) t = image(theta_closed, image(open_maps[idx], t));
            image_set.insert(std::move(g));
          }
        Instance rhs;
        for (const auto& f : image_set) rhs.insert(f);
        for (const auto& h : find_homomorphisms(pattern, rhs)) {
          std::set<Fact> lhs;
          for (const auto& f : pattern) lhs.insert(substitute(h, f));
          if (lhs != image_set) continue;
          ExplicitUnifier u;
          for (const auto& v : pattern_vars) u.theta_pattern[v] = image(h, v);
          u.theta_closed = theta_closed;
          for (std::size_t idx : family) u.theta_open.push_back(open_maps[idx]);
          out.push_back(std::move(u));
        }
      }
      if (family.size() == pattern.size()) return;
      for (std::size_t i = start; i < open_maps.size(); ++i) {
        family.push_back(i);
        self(self, i + 1);
        family.pop_back();
      }
    };
    visit_family(visit_family, 0);
  });
  return out;
}

bool is_instance_of(const ExplicitUnifier& specific, const Unifier& general, const std::vector<Fact>& pattern,
                    const std::vector<Fact>& target) {
  if (general.matching.size() != pattern.size()) return false;
  std::map<std::size_t, std::size_t> copy_map;
  auto atom_ok = [&](std::size_t i, std::size_t copy) {
    Fact lhs = pattern[i];
    for (auto& t : lhs.terms) t = image(specific.theta_pattern, t);
    Fact rhs = target[general.matching[i].first];
    for (auto& t : rhs.terms) t = image(specific.theta_closed, image(specific.theta_open[copy], t));
    return lhs == rhs;
  };
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == pattern.size()) return true;
    const std::size_t c = general.matching[i].second;
    if (auto it = copy_map.find(c); it != copy_map.end()) return atom_ok(i, it->second) && self(self, i + 1);
    for (std::size_t s = 0; s < specific.theta_open.size(); ++s) {
      if (!atom_ok(i, s)) continue;
      copy_map[c] = s;
      if (self(self, i + 1)) return true;
      copy_map.erase(c);
    }
    return false;
  };
  return assign(assign, 0);
}

}  // namespace dx::unification
