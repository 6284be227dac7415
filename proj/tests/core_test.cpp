#include <gtest/gtest.h>

#include "dx/core/condition.hpp"
#include "dx/core/errors.hpp"
#include "dx/core/io.hpp"
#include "dx/core/rep.hpp"
#include "dx/core/table.hpp"

namespace dx {
namespace {

TEST(Facts, RoundTripThroughText) {
  const auto i = parse_facts("R(a, \"New York\"). S(?o1, ?c2, 3).");
  EXPECT_EQ(i.size(), 2u);
  EXPECT_EQ(parse_facts(render_facts(i)), i);
  EXPECT_EQ(i.nulls().size(), 2u);
  EXPECT_FALSE(i.is_ground());
}

TEST(Facts, ArityClashIsAParseError) { EXPECT_THROW(parse_facts("R(a). R(a, b)."), ParseError); }

TEST(Facts, NullIdsStartAtOne) { EXPECT_THROW(parse_facts("R(?o0)."), ParseError); }

TEST(Canonicalize, IgnoresNullNames) {
  const auto a = canonicalize(parse_facts("K(a, ?c7). V(?c7, b). K(c, ?o3)."), parse_condition("?c7 != ?o3"));
  const auto b = canonicalize(parse_facts("K(c, ?o1). V(?c2, b). K(a, ?c2)."), parse_condition("?o1 != ?c2"));
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.condition, b.condition);
  EXPECT_TRUE(isomorphic(parse_facts("R(?o1, ?o2)."), parse_facts("R(?o5, ?o4).")));
  EXPECT_FALSE(isomorphic(parse_facts("R(?o1, ?o1)."), parse_facts("R(?o1, ?o2).")));
}

TEST(Gaifman, BlocksFollowSharedNulls) {
  const auto blocks = gaifman_partition(parse_facts("R(?o1, ?o2). S(?o2, a). T(?o3). U(b)."));
  ASSERT_EQ(blocks.size(), 3u);
  std::multiset<std::size_t> sizes;
  for (const auto& b : blocks) sizes.insert(b.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 1, 2}));
}

TEST(Condition, SatCheck) {
  const auto phi = parse_condition("?c1 != ?c2");
  EXPECT_TRUE(sat_check({}, phi));
  EXPECT_FALSE(sat_check({{Term::closed_null(1), Term::closed_null(2)}}, phi));
  EXPECT_FALSE(sat_check({{Term::constant("a"), Term::constant("b")}}, {}));
}

TEST(Rep, OpenNullsAreCopiedClosedNullsAreNot) {
  const auto open = parse_facts("R(a, ?o1).");
  EXPECT_TRUE(check_rep_membership(open, {}, parse_facts("R(a, b). R(a, c).")));
  const auto closed = parse_facts("R(a, ?c1).");
  EXPECT_FALSE(check_rep_membership(closed, {}, parse_facts("R(a, b). R(a, c).")));
  EXPECT_TRUE(check_rep_membership(closed, {}, parse_facts("R(a, b).")));
  EXPECT_FALSE(check_rep_membership(closed, {}, {}));
}

TEST(Rep, GlobalConditionRestrictsValuations) {
  const auto t = parse_facts("K(a, ?c1). K(c, ?o1).");
  const auto phi = parse_condition("?c1 != ?o1");
  EXPECT_TRUE(check_rep_membership(t, phi, parse_facts("K(a, x). K(c, y).")));
  EXPECT_FALSE(check_rep_membership(t, phi, parse_facts("K(a, x). K(c, x).")));
  EXPECT_TRUE(check_rep_membership(t, {}, parse_facts("K(a, x). K(c, x).")));
}

}  // namespace
}  // namespace dx
