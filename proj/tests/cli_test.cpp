#include <gtest/gtest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "dx/cli/generators.hpp"
#include "dx/core/io.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/mapping/parser.hpp"
#include "dx/oracle/oracle.hpp"
#include "dx/query/query.hpp"

namespace dx::cli {
namespace {

const char* kTriangle = "# triangle\nu v\nv w\nw u\n";

TEST(Graph, ParseAndRender) {
  const auto g = parse_graph(std::string(kTriangle) + "x\n");
  EXPECT_EQ(g.vertices.size(), 4u);
  EXPECT_EQ(g.edges.size(), 3u);
  const auto again = parse_graph(render_graph(g));
  EXPECT_EQ(again.vertices, g.vertices);
  EXPECT_EQ(again.edges, g.edges);
  EXPECT_THROW(parse_graph("u u\n"), std::invalid_argument);
}

TEST(Graph, TwoColorability) {
  EXPECT_FALSE(two_colorable(parse_graph(kTriangle)));
  EXPECT_TRUE(two_colorable(parse_graph("u v\nv w\nw x\nx u\n")));
}

TEST(Generators, ThreeColoringReductionsOnTriangle) {
  const auto g = parse_graph(kTriangle);
  const auto e = gen_threecol_existence(g);
  EXPECT_FALSE(e.decided.has_value());
  EXPECT_TRUE(oracle::exists_solution_general(e.source, e.program).exists);
  const auto c = gen_threecol_check(g);
  ASSERT_TRUE(c.target.has_value());
  EXPECT_TRUE(oracle::check_abd_solution(c.source, c.program, *c.target).solution);
  EXPECT_EQ(mapping::annotation_cardinality(c.program).overall, 2);
  const auto v = gen_threecol_eval(g);
  ASSERT_TRUE(v.query.has_value());
  EXPECT_FALSE(oracle::certain_oracle(oracle::Semantics::Abd, v.source, v.program, *v.query).truth());
}

TEST(Generators, BipartiteGraphsAreDecidedUpFront) {
  const auto e = gen_threecol_existence(parse_graph("u v\n"));
  ASSERT_TRUE(e.decided.has_value());
  EXPECT_TRUE(*e.decided);
}

TEST(Generators, CliqueRejectsSmallK) { EXPECT_THROW(gen_clique(parse_graph(kTriangle), 1), std::invalid_argument); }

TEST(Generators, WrittenFilesParseBack) {
  const auto g = parse_graph(kTriangle);
  const auto r = gen_threecol_eval(g);
  const auto dir = (std::filesystem::temp_directory_path() / "dx_cli_test").string();
  std::filesystem::remove_all(dir);
  write_reduction(r, g, dir, {{"kind", r.kind}});
  EXPECT_EQ(mapping::parse_mapping(read_file(dir + "/mapping.map")), r.program);
  EXPECT_EQ(parse_facts(read_file(dir + "/source.facts")), r.source);
  EXPECT_EQ(query::parse_query(read_file(dir + "/query.q")).disjuncts.size(), r.query->disjuncts.size());
  const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  EXPECT_TRUE(manifest.is_object());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dx::cli
