#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dx/core/term.hpp"

namespace dx {

struct Fact {
  SymbolId relation = 0;
  std::vector<Term> terms;

  Fact() = default;
  Fact(SymbolId rel, std::vector<Term> ts) : relation(rel), terms(std::move(ts)) {}
  Fact(std::string_view rel, std::vector<Term> ts) : relation(intern(rel)), terms(std::move(ts)) {}

  const std::string& relation_name() const { return symbol_name(relation); }
  std::size_t arity() const { return terms.size(); }
  bool is_ground() const;
  bool has_variables() const;

  // R(t1, t2) with plain term rendering.
  std::string str() const;

  auto operator<=>(const Fact&) const = default;
};

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept;
};

}  // namespace dx
