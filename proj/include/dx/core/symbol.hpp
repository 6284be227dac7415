#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dx {

using SymbolId = std::uint32_t;

// Process-wide interning of constant, variable and relation names. Thread-safe.
SymbolId intern(std::string_view name);
const std::string& symbol_name(SymbolId id);

}  // namespace dx
