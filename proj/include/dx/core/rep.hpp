#pragma once

#include <cstddef>
#include <vector>

#include "dx/core/table.hpp"

namespace dx {

struct RepOptions {
  std::size_t probe_budget = std::size_t{1} << 16;
};

// (v, {v_1..v_n}) |= phi*: each literal x != y holds iff the value sets of x and y
// across the copies are disjoint (closed nulls and constants have a single value).
bool satisfies_condition(const GlobalCondition& condition, const Valuation& closed,
                         const std::vector<Valuation>& open_copies);

// J ∈ rep(T, phi*). Throws BudgetExceeded past `probe_budget` subset probes.
bool check_rep_membership(const SemiNaiveTable& table, const GlobalCondition& condition, const Instance& target,
                          const RepOptions& options = {});

}  // namespace dx
