#pragma once

#include <string>
#include <string_view>

#include "dx/core/table.hpp"

namespace dx {

// Facts file: `R(a, b).` per line; every identifier is a constant, ?o<k>/?c<k> are nulls.
Instance parse_facts(std::string_view text);
std::string render_facts(const Instance& instance);

// Condition file: one clause per line, `?c1 != ?o1 | ?o1 != a`.
GlobalCondition parse_condition(std::string_view text);
std::string render_condition(const GlobalCondition& condition);

// Labels file: `R(a, b) -> {1, 3}` per line.
TupleLabeling parse_labels(std::string_view text);
std::string render_labels(const TupleLabeling& labels);

// Constant rendering that quotes names which are not plain identifiers.
std::string render_constant(const Term& t);
std::string render_fact(const Fact& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace dx
