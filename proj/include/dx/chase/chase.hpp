#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dx/core/table.hpp"
#include "dx/mapping/program.hpp"

namespace dx::chase {

enum class Phase { Forward, Egd, Backward };

std::string phase_name(Phase phase);

struct Failure {
  Phase phase = Phase::Forward;
  std::string witness;
};

struct Representative {
  SemiNaiveTable table;
  GlobalCondition condition;
  TupleLabeling labels;
  bool heuristic = false;  // density > 1: not authoritative
};

struct ChaseOutcome {
  std::variant<Representative, Failure> result;
  std::vector<std::string> warnings;

  bool succeeded() const { return std::holds_alternative<Representative>(result); }
  const Representative& representative() const { return std::get<Representative>(result); }
  const Failure& failure() const { return std::get<Failure>(result); }
};

struct ChaseOptions {
  // Nonzero seeds permute trigger order (used to test order independence).
  std::uint64_t shuffle_seed = 0;
};

// Labeled table with the next fresh open and closed null ids.
struct LabeledTable {
  SemiNaiveTable table;
  TupleLabeling labels;
  std::uint32_t next_open = 1;
  std::uint32_t next_closed = 1;
};

LabeledTable forward_chase(const Instance& source, const mapping::MappingProgram& program,
                           const ChaseOptions& options = {});

std::variant<LabeledTable, Failure> egd_chase(LabeledTable table, const std::vector<mapping::Aegd>& aegds,
                                              const ChaseOptions& options = {});

std::variant<GlobalCondition, Failure> backward_chase(const LabeledTable& table, const Instance& source,
                                                      const mapping::MappingProgram& program);

ChaseOutcome annotated_chase(const Instance& source, const mapping::MappingProgram& program,
                             const ChaseOptions& options = {});

// Oblivious s-t chase with fresh nulls followed by a standard egd chase.
std::variant<Instance, Failure> owa_chase(const Instance& source, const mapping::MappingProgram& program);

}  // namespace dx::chase
