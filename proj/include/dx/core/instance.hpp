#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dx/core/fact.hpp"

namespace dx {

using Schema = std::map<std::string, std::size_t>;

// Finite set of facts with a relation->arity schema inferred from insertions.
// Ground instances hold constants only; naive and semi-naive tables also hold nulls.
class Instance {
 public:
  using const_iterator = std::set<Fact>::const_iterator;

  Instance() = default;
  Instance(std::initializer_list<Fact> facts);
  explicit Instance(const std::vector<Fact>& facts);

  // Returns false when the fact was already present. Throws on arity conflict.
  bool insert(const Fact& fact);
  bool erase(const Fact& fact);
  bool contains(const Fact& fact) const { return facts_.count(fact) != 0; }
  void insert_all(const Instance& other);

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }
  const std::set<Fact>& facts() const { return facts_; }
  std::vector<Fact> to_vector() const { return {facts_.begin(), facts_.end()}; }

  Schema schema() const;
  void declare(SymbolId relation, std::size_t arity);
  bool is_ground() const;
  std::set<Term> domain() const;
  std::set<Term> nulls() const;
  std::set<Term> constants() const;
  std::vector<Fact> facts_of(SymbolId relation) const;

  // Facts ordered by (relation name, rendered terms) for serialization.
  std::vector<Fact> sorted_for_output() const;

  bool operator==(const Instance& other) const { return facts_ == other.facts_; }
  bool operator<(const Instance& other) const { return facts_ < other.facts_; }

 private:
  std::set<Fact> facts_;
  std::map<SymbolId, std::size_t> arity_;
};

using NaiveTable = Instance;
using SemiNaiveTable = Instance;

// Per-relation fact lists for join-style matching.
class RelationIndex {
 public:
  RelationIndex() = default;
  explicit RelationIndex(const Instance& instance);
  explicit RelationIndex(const std::vector<Fact>& facts);

  void add(const Fact& fact);
  const std::vector<const Fact*>& facts(SymbolId relation) const;

 private:
  std::deque<Fact> storage_;
  std::unordered_map<SymbolId, std::vector<const Fact*>> by_relation_;
};

std::string render_instance(const Instance& instance);

}  // namespace dx
