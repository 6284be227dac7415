#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dx/core/condition.hpp"
#include "dx/core/instance.hpp"

namespace dx {

// Maps nulls to constants; identity on constants.
struct Valuation {
  std::map<Term, Term> assignment;
};

// Maps each target fact to its nonempty set of annotation labels.
using TupleLabeling = std::map<Fact, std::set<int>>;

// Throws std::invalid_argument when v misses a null of the table.
Instance apply_valuation(const SemiNaiveTable& table, const Valuation& v);

// Connected components of facts under shared vertex terms; facts without vertices
// are singletons. Blocks are ordered by their first fact in input order.
std::vector<std::vector<Fact>> gaifman_blocks(const std::vector<Fact>& facts,
                                              const std::function<bool(const Term&)>& is_vertex);

// Gaifman partition of a table, where the vertices are its nulls.
std::vector<NaiveTable> gaifman_partition(const NaiveTable& table);

// True iff a kind-preserving bijective null renaming maps a onto b.
bool isomorphic(const SemiNaiveTable& a, const SemiNaiveTable& b);

// Representative with nulls renumbered (open and closed separately) in order of first
// occurrence in the output ordering of facts with null ids masked.
struct CanonicalTable {
  SemiNaiveTable table;
  GlobalCondition condition;
  TupleLabeling labels;
};
CanonicalTable canonicalize(const SemiNaiveTable& table, const GlobalCondition& condition = {},
                            const TupleLabeling& labels = {});

}  // namespace dx
