#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dx/core/table.hpp"
#include "dx/mapping/program.hpp"
#include "dx/query/eval.hpp"

namespace dx::oracle {

enum class Semantics { Abd, Inference, Owa, GcwaStar };

std::string semantics_name(Semantics s);
Semantics parse_semantics(const std::string& name);

// Bounded domain: dom(I) ∪ consts(Σ) ∪ consts(q) plus `extra_constants` fresh constants.
struct DomainBudget {
  std::size_t extra_constants = 2;
  std::size_t max_instance_size = 64;
  std::size_t max_nodes = 20'000'000;  // search nodes before BudgetExceeded
};

std::vector<Term> bounded_domain(const Instance& source, const mapping::MappingProgram& program,
                                 const std::set<Term>& more, const DomainBudget& budget);

// Label assignment found by the ABD checker.
struct AbdVerdict {
  bool solution = false;
  TupleLabeling labeling;
};

// ABD solution membership. Programs whose annotation cardinality is 1 use the forced labeling
// unless `general` is set.
AbdVerdict check_abd_solution(const Instance& source, const mapping::MappingProgram& program, const Instance& target,
                              bool general = false);

// Inference strategy found by the checker, summarized per tgd as the union of the head
// instantiations it uses.
struct InferenceVerdict {
  bool solution = false;
  std::vector<Instance> inferred_per_tgd;
};

InferenceVerdict check_inference_solution(const Instance& source, const mapping::MappingProgram& program,
                                          const Instance& target);

std::set<Instance> enumerate_abd_solutions(const Instance& source, const mapping::MappingProgram& program,
                                           const DomainBudget& budget = {}, const std::set<Term>& more = {});
std::set<Instance> enumerate_inference_solutions(const Instance& source, const mapping::MappingProgram& program,
                                                 const DomainBudget& budget = {}, const std::set<Term>& more = {});
// OWA solutions whose facts are all head instantiations of source triggers.
std::set<Instance> enumerate_owa_solutions(const Instance& source, const mapping::MappingProgram& program,
                                           const DomainBudget& budget = {}, const std::set<Term>& more = {});
std::set<Instance> minimal_solutions(const Instance& source, const mapping::MappingProgram& program,
                                     const DomainBudget& budget = {}, const std::set<Term>& more = {});
std::set<Instance> gcwa_star_solutions(const Instance& source, const mapping::MappingProgram& program,
                                       const DomainBudget& budget = {}, const std::set<Term>& more = {});

std::set<Instance> enumerate_solutions(Semantics semantics, const Instance& source,
                                       const mapping::MappingProgram& program, const DomainBudget& budget = {},
                                       const std::set<Term>& more = {});

struct OracleAnswer {
  bool no_solutions = false;
  std::set<query::Tuple> answers;
  std::size_t solutions_examined = 0;
  std::size_t domain_size = 0;

  bool truth() const { return !answers.empty(); }
};

OracleAnswer certain_oracle(Semantics semantics, const Instance& source, const mapping::MappingProgram& program,
                            const query::Query& q, const DomainBudget& budget = {});

struct ExistenceVerdict {
  bool exists = false;
  bool authoritative = true;  // false when decided by bounded search
  std::optional<Instance> witness;
};

ExistenceVerdict exists_solution_general(const Instance& source, const mapping::MappingProgram& program,
                                         const DomainBudget& budget = {});

}  // namespace dx::oracle
