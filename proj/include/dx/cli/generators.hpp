#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dx/core/instance.hpp"
#include "dx/mapping/program.hpp"
#include "dx/query/query.hpp"

namespace dx::cli {

// Simple undirected graph; vertex names double as constants.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

// Edge list: `u v` per line adds an edge, a lone `v` adds an isolated vertex, `#` comments.
// Throws std::invalid_argument on self-loops or malformed lines.
Graph parse_graph(std::string_view text);
std::string render_graph(const Graph& g);

bool two_colorable(const Graph& g);

// A generated reduction instance. `decided` carries a verdict settled by a polynomial
// pre-check, in which case the instance is still emitted but need not be solved.
struct Reduction {
  std::string kind;
  mapping::MappingProgram program;
  Instance source;
  std::optional<Instance> target;
  std::optional<query::Query> query;
  std::string query_text;
  std::optional<bool> decided;
  std::string note;
};

Reduction gen_threecol_existence(const Graph& g);
Reduction gen_threecol_check(const Graph& g);
Reduction gen_threecol_eval(const Graph& g);
// Throws std::invalid_argument when k < 2.
Reduction gen_clique(const Graph& g, int k);

// Writes mapping.map, source.facts, [target.facts], [query.q] and manifest.json into `dir`.
void write_reduction(const Reduction& r, const Graph& g, const std::string& dir,
                     const std::vector<std::pair<std::string, std::string>>& parameters);

}  // namespace dx::cli
