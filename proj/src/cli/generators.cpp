#include "dx/cli/generators.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dx/core/io.hpp"
#include "dx/core/lexer.hpp"
#include "dx/mapping/parser.hpp"

namespace dx::cli {
namespace {

const std::vector<std::string> kColors{"r", "g", "b"};

void reject_reserved(const Graph& g, const std::set<std::string>& reserved) {
  for (const auto& v : g.vertices)
    if (reserved.count(v)) throw std::invalid_argument("vertex name '" + v + "' clashes with a generator constant");
}

Term c(const std::string& name) { return Term::constant(name); }

// Both orientations of every edge.
void add_edges(Instance& instance, std::string_view relation, const Graph& g) {
  for (const auto& [u, v] : g.edges) {
    instance.insert(Fact(relation, {c(u), c(v)}));
    instance.insert(Fact(relation, {c(v), c(u)}));
  }
}

void add_color_pairs(Instance& instance) {
  for (const auto& a : kColors)
    for (const auto& b : kColors)
      if (a != b) instance.insert(Fact("D", {c(a), c(b)}));
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  std::set<std::string> seen;
  std::set<std::pair<std::string, std::string>> edges;
  auto vertex = [&](const std::string& v) {
    if (seen.insert(v).second) g.vertices.push_back(v);
  };
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> parts;
    for (std::string w; words >> w;) parts.push_back(w);
    if (parts.empty()) continue;
    if (parts.size() > 2) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected `u v` or `v`");
    for (const auto& p : parts)
      if (!is_plain_identifier(p) && !is_integer(p))
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad vertex name '" + p + "'");
    vertex(parts[0]);
    if (parts.size() == 1) continue;
    if (parts[0] == parts[1]) throw std::invalid_argument("line " + std::to_string(lineno) + ": self-loop on " + parts[0]);
    vertex(parts[1]);
    auto key = std::minmax(parts[0], parts[1]);
    if (edges.emplace(key.first, key.second).second) g.edges.emplace_back(parts[0], parts[1]);
  }
  return g;
}

std::string render_graph(const Graph& g) {
  std::set<std::string> touched;
  std::string out;
  for (const auto& [u, v] : g.edges) {
    out += u + " " + v + "\n";
    touched.insert(u);
    touched.insert(v);
  }
  for (const auto& v : g.vertices)
    if (!touched.count(v)) out += v + "\n";
  return out;
}

bool two_colorable(const Graph& g) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::map<std::string, int> side;
  for (const auto& start : g.vertices) {
    if (side.count(start)) continue;
    side[start] = 0;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (const auto& w : adj[u]) {
        auto it = side.find(w);
        if (it == side.end()) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (it->second == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

Reduction gen_threecol_existence(const Graph& g) {
  reject_reserved(g, {"r", "g", "b"});
  Reduction r;
  r.kind = "three-col-exist";
  r.program = mapping::parse_mapping(
      "abd: V(x) <-> B@1(x, v), C@1(x, v).\n"
      "abd: E0(x, y) <-> E@1(x, y).\n"
      "abd: D(z, v) <-> B@1(x, z), C@1(y, v), E@1(x, y).\n");
  for (const auto& v : g.vertices) r.source.insert(Fact("V", {c(v)}));
  add_edges(r.source, "E0", g);
  add_color_pairs(r.source);
  if (two_colorable(g)) {
    r.decided = true;
    r.note = "2-colorable, hence 3-colorable: answer true without solving the instance";
  } else {
    r.note = "not 2-colorable: a solution exists iff the graph is 3-colorable";
  }
  return r;
}

Reduction gen_threecol_check(const Graph& g) {
  reject_reserved(g, {"r", "g", "b"});
  Reduction r;
  r.kind = "three-col-check";
  r.program = mapping::parse_mapping(
      "abd: D(z, v) <-> B@1(x, z), C@1(y, v), E@1(x, y).\n"
      "abd: V(x, v) <-> B@2(x, v).\n"
      "abd: V(x, v) <-> C@2(x, v).\n");
  add_color_pairs(r.source);
  Instance target;
  for (const auto& v : g.vertices)
    for (const auto& col : kColors) {
      r.source.insert(Fact("V", {c(v), c(col)}));
      target.insert(Fact("B", {c(v), c(col)}));
      target.insert(Fact("C", {c(v), c(col)}));
    }
  add_edges(target, "E", g);
  r.target = std::move(target);
  if (two_colorable(g)) {
    r.decided = true;
    r.note = "2-colorable, hence 3-colorable: answer true without checking the candidate";
  } else {
    r.note = "not 2-colorable: the candidate is a solution iff the graph is 3-colorable";
  }
  return r;
}

Reduction gen_threecol_eval(const Graph& g) {
  reject_reserved(g, {"r", "g", "b"});
  Reduction r;
  r.kind = "three-col-eval";
  r.program = mapping::parse_mapping(
      "abd: V(x) <-> B@1(x, v), C@1(x, v).\n"
      "abd: M(v) <-> C@1(x, v).\n"
      "abd: E0(x, y) <-> E@1(x, y).\n");
  for (const auto& v : g.vertices) r.source.insert(Fact("V", {c(v)}));
  for (const auto& col : kColors) r.source.insert(Fact("M", {c(col)}));
  add_edges(r.source, "E0", g);
  r.query_text = "q() :- B(x, z), C(y, z), E(x, y).\n";
  r.query = query::parse_query(r.query_text);
  r.note = "certain answer is true iff the graph is not 3-colorable";
  return r;
}

Reduction gen_clique(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("clique size must be at least 2");
  std::set<std::string> reserved;
  for (int i = 1; i <= k; ++i) reserved.insert("c" + std::to_string(i));
  reject_reserved(g, reserved);
  Reduction r;
  r.kind = "clique";
  r.program = mapping::parse_mapping(
      "abd: E0(x, y) <-> E@1(x, y).\n"
      "abd: C0(x, y) <-> C@1(x, y), A@1(x, z), B@1(y, v).\n");
  add_edges(r.source, "E0", g);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) r.source.insert(Fact("C0", {c("c" + std::to_string(i)), c("c" + std::to_string(j))}));
  r.query_text = "q() :- C(x, y), A(x, z1), B(y, z2), not E(z1, z2).\n";
  r.query = query::parse_query(r.query_text);
  r.note = "certain answer is intended to be true iff the graph has no clique of size " + std::to_string(k);
  return r;
}

void write_reduction(const Reduction& r, const Graph& g, const std::string& dir,
                     const std::vector<std::pair<std::string, std::string>>& parameters) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["generator"] = r.kind;
  manifest["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : parameters) manifest["parameters"][k] = v;
  manifest["graph"] = {{"vertices", g.vertices.size()}, {"edges", g.edges.size()}};
  manifest["note"] = r.note;
  manifest["decided"] = r.decided ? nlohmann::json(*r.decided) : nlohmann::json(nullptr);
  auto emit = [&](const std::string& name, const std::string& content, const std::string& role) {
    write_file((fs::path(dir) / name).string(), content);
    manifest["artifacts"].push_back({{"file", name}, {"role", role}});
  };
  emit("graph.txt", render_graph(g), "input graph");
  emit("mapping.map", mapping::serialize_mapping(r.program), "mapping");
  emit("source.facts", render_facts(r.source), "source instance");
  if (r.target) emit("target.facts", render_facts(*r.target), "candidate solution");
  if (r.query) emit("query.q", r.query_text, "query");
  write_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

}  // namespace dx::cli
