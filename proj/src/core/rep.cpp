#include "dx/core/rep.hpp"

#include <algorithm>
#include <set>

#include "dx/core/errors.hpp"
#include "dx/core/homomorphism.hpp"

namespace dx {
namespace {

std::set<Term> values_of(const Term& t, const Valuation& closed, const std::vector<Valuation>& copies) {
  std::set<Term> out;
  if (t.is_open_null()) {
    for (const auto& c : copies) {
      auto it = c.assignment.find(t);
      out.insert(it == c.assignment.end() ? t : it->second);
    }
  } else if (t.is_closed_null()) {
    auto it = closed.assignment.find(t);
    out.insert(it == closed.assignment.end() ? t : it->second);
  } else {
    out.insert(t);
  }
  return out;
}

bool literal_holds(const Disequality& d, const Valuation& closed, const std::vector<Valuation>& copies) {
  auto a = values_of(d.left, closed, copies);
  auto b = values_of(d.right, closed, copies);
  return std::none_of(a.begin(), a.end(), [&](const Term& t) { return b.count(t) != 0; });
}

struct CopySearch {
  const GlobalCondition& condition;
  const Valuation& closed;
  std::vector<Valuation> copies;
  std::vector<std::vector<std::size_t>> covers;  // J-fact indices covered per copy
  std::vector<std::vector<std::size_t>> covering;  // copies covering each J-fact
  std::size_t target_size = 0;
  std::size_t probes = 0;
  std::size_t budget = 0;

  bool run(std::vector<std::size_t>& chosen, std::vector<int>& covered_count, std::size_t covered) {
    if (covered == target_size) return true;
    std::size_t pick = 0;
    while (covered_count[pick] > 0) ++pick;
    for (std::size_t c : covering[pick]) {
      if (++probes > budget) throw BudgetExceeded("rep membership: subset probe budget exhausted");
      std::vector<Valuation> trial;
      for (auto i : chosen) trial.push_back(copies[i]);
      trial.push_back(copies[c]);
      if (!satisfies_condition(condition, closed, trial)) continue;
      chosen.push_back(c);
      std::size_t gained = 0;
      for (auto f : covers[c])
        if (covered_count[f]++ == 0) ++gained;
      if (run(chosen, covered_count, covered + gained)) return true;
      for (auto f : covers[c]) --covered_count[f];
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

bool satisfies_condition(const GlobalCondition& condition, const Valuation& closed,
                         const std::vector<Valuation>& open_copies) {
  for (const auto& clause : condition.clauses()) {
    const bool ok = std::any_of(clause.begin(), clause.end(),
                                [&](const Disequality& d) { return literal_holds(d, closed, open_copies); });
    if (!ok) return false;
  }
  return true;
}

bool check_rep_membership(const SemiNaiveTable& table, const GlobalCondition& condition, const Instance& target,
                          const RepOptions& options) {
  if (table.empty()) return target.empty();
  if (target.empty()) return false;
  std::vector<Term> closed_nulls;
  for (const auto& t : table.nulls())
    if (t.is_closed_null()) closed_nulls.push_back(t);
  const auto dom = target.constants();
  const std::vector<Term> values(dom.begin(), dom.end());
  const auto target_facts = target.to_vector();

  std::size_t probes = 0;
  std::vector<std::size_t> pick(closed_nulls.size(), 0);
  while (true) {
    Valuation closed;
    for (std::size_t i = 0; i < closed_nulls.size(); ++i) closed.assignment[closed_nulls[i]] = values[pick[i]];
    Instance valued;
    for (auto f : table) {
      for (auto& t : f.terms)
        if (t.is_closed_null()) t = closed.assignment.at(t);
      valued.insert(f);
    }
    CopySearch search{condition, closed, {}, {}, std::vector<std::vector<std::size_t>>(target_facts.size()),
                      target_facts.size(), probes, options.probe_budget};
    for (const auto& h : find_homomorphisms(valued.to_vector(), target)) {
      Valuation copy{h};
      if (!satisfies_condition(condition, closed, {copy})) continue;
      std::vector<std::size_t> covered;
      for (const auto& f : valued) {
        auto image = substitute(h, f);
        auto it = std::lower_bound(target_facts.begin(), target_facts.end(), image);
        covered.push_back(static_cast<std::size_t>(it - target_facts.begin()));
      }
      std::sort(covered.begin(), covered.end());
      covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
      for (auto f : covered) search.covering[f].push_back(search.copies.size());
      search.copies.push_back(std::move(copy));
      search.covers.push_back(std::move(covered));
    }
    const bool coverable = std::all_of(search.covering.begin(), search.covering.end(),
                                       [](const auto& c) { return !c.empty(); });
    if (coverable) {
      std::vector<std::size_t> chosen;
      std::vector<int> counts(target_facts.size(), 0);
      if (search.run(chosen, counts, 0)) return true;
    }
    probes = search.probes;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == values.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return false;
}

}  // namespace dx
