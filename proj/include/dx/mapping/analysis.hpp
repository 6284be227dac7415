#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dx/mapping/program.hpp"

namespace dx::mapping {

struct RelationMetric {
  std::map<std::string, int> per_relation;
  int overall = 0;
};

// Max occurrences of a single R@i across abd heads.
RelationMetric annotation_density(const MappingProgram& program);
// |annot(Σ↔_abd, R)|.
RelationMetric annotation_cardinality(const MappingProgram& program);

struct AnnotatedPosition {
  std::string relation;
  int annotation = 0;
  int index = 0;  // 1-based
  auto operator<=>(const AnnotatedPosition&) const = default;
};

std::set<AnnotatedPosition> affected_positions(const MappingProgram& program);

struct SafetyReport {
  bool safe = true;
  std::vector<std::size_t> offending;  // aegd indices
};

SafetyReport check_safety(const MappingProgram& program);

// True iff some aegd equates two variables that both occur at affected positions.
bool equates_affected_variables(const MappingProgram& program);

// Drops repeated head atoms.
std::vector<Tgd> normalize_tgds(const std::vector<Tgd>& tgds);
bool is_gav_reducible(const std::vector<Tgd>& tgds);
bool all_full(const std::vector<Tgd>& tgds);

class UnsafeEgdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Translation {
  MappingProgram program;
  std::vector<std::string> warnings;
};

// tgds + egds into density-1 abds + aegds by Gaifman blocks of each head.
// Throws UnsafeEgdError when a produced aegd is unsafe.
Translation translate_tgds(const MappingProgram& program);

// Reverse direction of an abd: annotated head implies ∃ȳ body.
struct ReverseDependency {
  std::vector<Atom> body;
  std::vector<Atom> head;
  std::vector<Term> existentials;
};

struct Views {
  std::vector<Tgd> forward;                // Σ→
  std::vector<ReverseDependency> backward;  // Σ←
  MappingProgram diamond;                   // Σ⋄ with R@i renamed to R_i
};

Views derive_views(const MappingProgram& program);

// Relation symbol R_i used in Σ⋄.
SymbolId diamond_relation(SymbolId relation, int annotation);

}  // namespace dx::mapping
