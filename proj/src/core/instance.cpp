#include "dx/core/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace dx {

Instance::Instance(std::initializer_list<Fact> facts) {
  for (const auto& f : facts) insert(f);
}

Instance::Instance(const std::vector<Fact>& facts) {
  for (const auto& f : facts) insert(f);
}

void Instance::declare(SymbolId relation, std::size_t arity) {
  auto [it, fresh] = arity_.emplace(relation, arity);
  if (!fresh && it->second != arity) {
    throw std::invalid_argument("arity conflict for relation " + symbol_name(relation) + ": " +
                                std::to_string(it->second) + " vs " + std::to_string(arity));
  }
}

bool Instance::insert(const Fact& fact) {
  declare(fact.relation, fact.arity());
  return facts_.insert(fact).second;
}

bool Instance::erase(const Fact& fact) { return facts_.erase(fact) != 0; }

void Instance::insert_all(const Instance& other) {
  for (const auto& f : other) insert(f);
}

Schema Instance::schema() const {
  Schema out;
  for (const auto& [rel, arity] : arity_) out.emplace(symbol_name(rel), arity);
  return out;
}

bool Instance::is_ground() const {
  return std::all_of(facts_.begin(), facts_.end(), [](const Fact& f) { return f.is_ground(); });
}

std::set<Term> Instance::domain() const {
  std::set<Term> out;
  for (const auto& f : facts_) out.insert(f.terms.begin(), f.terms.end());
  return out;
}

std::set<Term> Instance::nulls() const {
  std::set<Term> out;
  for (const auto& f : facts_)
    for (const auto& t : f.terms)
      if (t.is_null()) out.insert(t);
  return out;
}

std::set<Term> Instance::constants() const {
  std::set<Term> out;
  for (const auto& f : facts_)
    for (const auto& t : f.terms)
      if (t.is_constant()) out.insert(t);
  return out;
}

std::vector<Fact> Instance::facts_of(SymbolId relation) const {
  std::vector<Fact> out;
  for (const auto& f : facts_)
    if (f.relation == relation) out.push_back(f);
  return out;
}

std::vector<Fact> Instance::sorted_for_output() const {
  std::vector<std::pair<std::string, const Fact*>> keyed;
  keyed.reserve(facts_.size());
  for (const auto& f : facts_) keyed.emplace_back(f.str(), &f);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const auto& ra = a.second->relation_name();
    const auto& rb = b.second->relation_name();
    return ra != rb ? ra < rb : a.first < b.first;
  });
  std::vector<Fact> out;
  out.reserve(keyed.size());
  for (const auto& [_, f] : keyed) out.push_back(*f);
  return out;
}

RelationIndex::RelationIndex(const Instance& instance) {
  for (const auto& f : instance) add(f);
}

RelationIndex::RelationIndex(const std::vector<Fact>& facts) {
  for (const auto& f : facts) add(f);
}

void RelationIndex::add(const Fact& fact) {
  storage_.push_back(fact);
  by_relation_[fact.relation].push_back(&storage_.back());
}

const std::vector<const Fact*>& RelationIndex::facts(SymbolId relation) const {
  static const std::vector<const Fact*> none;
  auto it = by_relation_.find(relation);
  return it == by_relation_.end() ? none : it->second;
}

std::string render_instance(const Instance& instance) {
  std::string out;
  for (const auto& f : instance.sorted_for_output()) out += f.str() + ".\n";
  return out;
}

}  // namespace dx
