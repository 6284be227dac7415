#include "dx/core/condition.hpp"

#include <algorithm>

namespace dx {

Clause normalize_clause(Clause clause) {
  for (auto& d : clause) d = Disequality::make(d.left, d.right);
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  return clause;
}

std::string render_clause(const Clause& clause) {
  std::string out;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i) out += " | ";
    out += clause[i].str();
  }
  return out;
}

GlobalCondition::GlobalCondition(std::vector<Clause> clauses) {
  for (auto& c : clauses) add(std::move(c));
}

bool GlobalCondition::add(Clause clause) {
  clause = normalize_clause(std::move(clause));
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), clause);
  if (it != clauses_.end() && *it == clause) return false;
  clauses_.insert(it, std::move(clause));
  return true;
}

std::string GlobalCondition::str() const {
  std::string out;
  for (const auto& c : clauses_) out += render_clause(c) + "\n";
  return out;
}

Term TermPartition::find(const Term& t) {
  auto it = parent_.find(t);
  if (it == parent_.end()) {
    parent_.emplace(t, t);
    if (t.is_constant()) constant_.emplace(t, t);
    return t;
  }
  if (it->second == t) return t;
  Term root = find(it->second);
  parent_[t] = root;
  return root;
}

bool TermPartition::merge(const Term& a, const Term& b) {
  Term ra = find(a);
  Term rb = find(b);
  if (ra == rb) return true;
  auto ca = constant_.find(ra);
  auto cb = constant_.find(rb);
  if (ca != constant_.end() && cb != constant_.end() && ca->second != cb->second) return false;
  parent_[rb] = ra;
  if (ca == constant_.end() && cb != constant_.end()) constant_[ra] = cb->second;
  return true;
}

std::optional<Term> TermPartition::constant_of(const Term& t) {
  auto it = constant_.find(find(t));
  if (it == constant_.end()) return std::nullopt;
  return it->second;
}

bool sat_check(const std::vector<std::pair<Term, Term>>& equalities, const GlobalCondition& condition) {
  TermPartition classes;
  for (const auto& [a, b] : equalities)
    if (!classes.merge(a, b)) return false;
  for (const auto& clause : condition.clauses()) {
    const bool some_distinct = std::any_of(clause.begin(), clause.end(), [&](const Disequality& d) {
      return !classes.same(d.left, d.right);
    });
    if (!some_distinct) return false;
  }
  return true;
}

}  // namespace dx
