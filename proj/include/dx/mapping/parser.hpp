#pragma once

#include <string>
#include <string_view>

#include "dx/mapping/program.hpp"

namespace dx::mapping {

// Statements: `abd: B <-> H.`, `aegd: H -> x = y.`, `tgd: B -> H.`, `egd: B -> x = y.`
// Unquoted identifiers are variables, double-quoted tokens are constants.
MappingProgram parse_mapping(std::string_view text);

std::string serialize_mapping(const MappingProgram& program);

}  // namespace dx::mapping
