#include "dx/core/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace dx {
namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, SymbolId> ids;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

SymbolId intern(std::string_view name) {
  auto& table = symbols();
  std::lock_guard lock(table.mutex);
  if (auto it = table.ids.find(name); it != table.ids.end()) return it->second;
  const auto id = static_cast<SymbolId>(table.names.size());
  table.names.emplace_back(name);
  table.ids.emplace(std::string_view(table.names.back()), id);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  auto& table = symbols();
  std::lock_guard lock(table.mutex);
  return table.names.at(id);
}

}  // namespace dx
