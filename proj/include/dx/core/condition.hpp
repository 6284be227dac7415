#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dx/core/term.hpp"

namespace dx {

struct Disequality {
  Term left;
  Term right;

  // Orders the two sides so that equal literals compare equal.
  static Disequality make(Term a, Term b) { return a <= b ? Disequality{a, b} : Disequality{b, a}; }
  bool reflexive() const { return left == right; }
  std::string str() const { return left.str() + " != " + right.str(); }
  auto operator<=>(const Disequality&) const = default;
};

// Disjunction of disequalities, kept sorted and duplicate-free.
using Clause = std::vector<Disequality>;

Clause normalize_clause(Clause clause);
std::string render_clause(const Clause& clause);

// Conjunction of clauses; the empty conjunction is true.
class GlobalCondition {
 public:
  GlobalCondition() = default;
  explicit GlobalCondition(std::vector<Clause> clauses);

  // Adds a normalized clause; returns false if it was already present.
  bool add(Clause clause);
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool trivially_true() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }
  std::string str() const;

  bool operator==(const GlobalCondition&) const = default;

 private:
  std::vector<Clause> clauses_;
};

// Union-find over terms; a class may contain at most one constant.
class TermPartition {
 public:
  Term find(const Term& t);
  // Merges the classes of a and b; returns false if two distinct constants meet.
  bool merge(const Term& a, const Term& b);
  bool same(const Term& a, const Term& b) { return find(a) == find(b); }
  // The constant of t's class, if any.
  std::optional<Term> constant_of(const Term& t);

 private:
  std::map<Term, Term> parent_;
  std::map<Term, Term> constant_;
};

bool sat_check(const std::vector<std::pair<Term, Term>>& equalities, const GlobalCondition& condition);

}  // namespace dx
