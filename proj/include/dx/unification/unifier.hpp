#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dx/core/condition.hpp"
#include "dx/core/homomorphism.hpp"

namespace dx::unification {

// Open null `t` as it appears in copy `copy` (a fresh variable-like term); other terms unchanged.
Term copy_term(const Term& t, std::size_t copy);
Fact copy_fact(const Fact& f, std::size_t copy);

// Unifier of a pattern V with copies of facts of a semi-naive table.
struct Unifier {
  // For each pattern atom: (index of the target fact, copy index).
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::size_t copies = 0;
  // Representative term of every class, keyed by pattern terms and copied target terms.
  std::map<Term, Term> representative;

  // Positional equalities implied by the matching (pattern term, copied target term).
  std::vector<std::pair<Term, Term>> equalities;

  // θ1: pattern variables/nulls to representatives.
  Homomorphism pattern_map(const std::vector<Fact>& pattern) const;
  // θ2: closed nulls to representatives.
  Homomorphism closed_retraction(const std::vector<Fact>& target) const;
  // θ2^i: open nulls of copy i to representatives.
  Homomorphism open_retraction(const std::vector<Fact>& target, std::size_t copy) const;
};

struct UnifyOptions {
  std::size_t max_pattern_atoms = 6;
};

// Most general unifiers: one per canonical (fact, copy) matching whose congruence closure
// merges no two distinct constants, minus matchings subsumed by a finer copy structure.
std::vector<Unifier> mgu_set(const std::vector<Fact>& pattern, const std::vector<Fact>& target,
                             const UnifyOptions& options = {});

// Every most-general candidate before subsumption filtering (used by evaluators).
std::vector<Unifier> unifier_closures(const std::vector<Fact>& pattern, const std::vector<Fact>& target,
                                      const UnifyOptions& options = {});

// Brute-force unifier in the defining form θ1(V) = θ2(∪ θ2^i(T')).
struct ExplicitUnifier {
  Homomorphism theta_pattern;
  Homomorphism theta_closed;
  std::vector<Homomorphism> theta_open;
};

// Exhaustive enumeration over maps into dom(T') ∪ consts(V); intended for small inputs.
std::vector<ExplicitUnifier> enumerate_unifiers(const std::vector<Fact>& pattern, const std::vector<Fact>& target);

// True iff `specific` is obtained from `general` by composing further maps.
bool is_instance_of(const ExplicitUnifier& specific, const Unifier& general, const std::vector<Fact>& pattern,
                    const std::vector<Fact>& target);

}  // namespace dx::unification
