#include <gtest/gtest.h>

#include "dx/core/errors.hpp"
#include "dx/core/io.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/mapping/parser.hpp"

namespace dx::mapping {
namespace {

MappingProgram fixture(const std::string& name) { return parse_mapping(read_file(std::string(DX_DATA_DIR) + "/" + name)); }

TEST(Parser, RoundTrip) {
  const auto p = fixture("closed_null.map");
  EXPECT_EQ(p.abds.size(), 2u);
  EXPECT_EQ(p.aegds.size(), 1u);
  EXPECT_EQ(parse_mapping(serialize_mapping(p)), p);
}

TEST(Parser, RejectsBadAnnotationsAndKeywords) {
  EXPECT_THROW(parse_mapping("abd: S(x) <-> T@0(x)."), ParseError);
  EXPECT_THROW(parse_mapping("rule: S(x) -> T(x)."), ParseError);
  EXPECT_THROW(parse_mapping("tgd: S(x) -> T(x). tgd: S(x, y) -> T(x)."), ParseError);
}

TEST(Parser, VariableRoles) {
  const auto p = parse_mapping("abd: R(x, y) <-> S@1(x, z).");
  const auto& d = p.abds.front();
  EXPECT_EQ(d.shared, std::vector<Term>{Term::variable("x")});
  EXPECT_EQ(d.body_only, std::vector<Term>{Term::variable("y")});
  EXPECT_EQ(d.head_only, std::vector<Term>{Term::variable("z")});
}

TEST(Metrics, DensityCountsRepeatedUse) {
  const auto p = parse_mapping("abd: A(x) <-> T@1(x, z). abd: B(x) <-> T@1(x, x), T@2(x, x).");
  const auto ad = annotation_density(p);
  EXPECT_EQ(ad.per_relation.at("T"), 2);
  EXPECT_EQ(annotation_cardinality(p).per_relation.at("T"), 2);
}

TEST(Safety, RepeatedVariableOnAffectedPositionIsUnsafe) {
  const auto p = parse_mapping(
      "abd: A(x) <-> T@1(x, z).\n"
      "aegd: T@1(x, z), T@1(y, z) -> x = y.\n");
  EXPECT_EQ(affected_positions(p), (std::set<AnnotatedPosition>{{"T", 1, 2}}));
  const auto r = check_safety(p);
  EXPECT_FALSE(r.safe);
  EXPECT_EQ(r.offending, std::vector<std::size_t>{0});
}

TEST(Tgds, GavReducibility) {
  EXPECT_TRUE(is_gav_reducible(parse_mapping("tgd: R(x, y) -> S(x, z), U(y).").tgds));
  EXPECT_FALSE(is_gav_reducible(parse_mapping("tgd: R(x, y) -> S(x, z), T(z, y).").tgds));
  EXPECT_TRUE(all_full(parse_mapping("tgd: R(x, y) -> S(x, y).").tgds));
}

TEST(Translate, FullTgdGetsOneAnnotation) {
  const auto t = translate_tgds(parse_mapping("tgd: R(x, y) -> S(x, y), U(y).")).program;
  ASSERT_EQ(t.abds.size(), 2u);
  for (const auto& d : t.abds) EXPECT_EQ(d.head.size(), 1u);
}

TEST(Translate, EgdBecomesAnnotatedEgds) {
  const auto t = translate_tgds(parse_mapping("tgd: R(x, y) -> S(x, y).\negd: S(x, y), S(x, w) -> y = w.\n")).program;
  EXPECT_FALSE(t.aegds.empty());
  for (const auto& e : t.aegds)
    for (const auto& a : e.body) EXPECT_GT(a.annotation, 0);
}

TEST(Views, DiamondRenamesAnnotatedRelations) {
  const auto v = derive_views(fixture("closed_null.map"));
  EXPECT_EQ(v.forward.size(), 2u);
  EXPECT_EQ(v.backward.size(), 2u);
  EXPECT_NE(diamond_relation(intern("K"), 1), intern("K"));
}

}  // namespace
}  // namespace dx::mapping
