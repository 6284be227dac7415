#include <gtest/gtest.h>

#include "dx/core/errors.hpp"
#include "dx/core/io.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/mapping/parser.hpp"
#include "dx/oracle/kernel.hpp"
#include "dx/oracle/oracle.hpp"
#include "dx/query/query.hpp"

namespace dx::oracle {
namespace {

std::string fixture(const std::string& name) { return read_file(std::string(DX_DATA_DIR) + "/" + name); }

TEST(Domain, AddsFreshConstants) {
  const auto p = mapping::parse_mapping("tgd: R(x) -> S(x, \"k\").");
  DomainBudget b;
  b.extra_constants = 2;
  const auto d = bounded_domain(parse_facts("R(a)."), p, {}, b);
  EXPECT_EQ(d.size(), 4u);
}

TEST(Kernel, ParallelMatchesSerial) {
  std::vector<Instance> candidates;
  for (int n = 0; n < 200; ++n) {
    Instance i;
    for (int k = 0; k <= n % 7; ++k) i.insert(Fact("S", {Term::constant("c" + std::to_string((n * 31 + k) % 11))}));
    candidates.push_back(i);
  }
  const CandidatePredicate even = [](const Instance& i) { return i.size() % 2 == 0 && i.contains(Fact("S", {Term::constant("c3")})); };
  EXPECT_EQ(check_candidates(candidates, even), check_candidates_serial(candidates, even));
}

TEST(AbdCheck, CardinalityOneFastPathAgreesWithGeneralSearch) {
  const auto p = mapping::parse_mapping(fixture("closed_null.map"));
  const auto i = parse_facts(fixture("closed_null.facts"));
  DomainBudget b;
  b.extra_constants = 1;
  auto forward = p;
  forward.aegds.clear();
  const auto candidates = enumerate_owa_solutions(i, forward, b);
  const auto solutions = enumerate_abd_solutions(i, p, b);
  ASSERT_FALSE(candidates.empty());
  for (const auto& j : candidates) {
    const bool fast = check_abd_solution(i, p, j).solution;
    EXPECT_EQ(fast, check_abd_solution(i, p, j, true).solution);
    EXPECT_EQ(fast, solutions.count(j) != 0);
  }
}

TEST(AbdCheck, LabelingCoversEveryFact) {
  const auto p = mapping::parse_mapping(fixture("emp_projects.map"));
  const auto v = check_abd_solution(parse_facts(fixture("emp_projects.facts")), p,
                                    parse_facts(fixture("emp_projects_ok.facts")));
  ASSERT_TRUE(v.solution);
  EXPECT_EQ(v.labeling.size(), 7u);
}

TEST(Inference, RejectsUnsupportedFacts) {
  const auto p = mapping::parse_mapping("tgd: R(x) -> S(x, z).");
  const auto i = parse_facts("R(a).");
  EXPECT_TRUE(check_inference_solution(i, p, parse_facts("S(a, b).")).solution);
  EXPECT_FALSE(check_inference_solution(i, p, parse_facts("S(a, b). S(c, b).")).solution);
  EXPECT_FALSE(check_inference_solution(i, p, {}).solution);
}

TEST(Inference, MatchesTranslationOnSmallCase) {
  const auto p = mapping::parse_mapping("tgd: R(x, y) -> S(x, z), T(z, y).");
  const auto i = parse_facts("R(a, b). R(b, b).");
  DomainBudget b;
  b.extra_constants = 1;
  EXPECT_EQ(enumerate_inference_solutions(i, p, b), enumerate_abd_solutions(i, mapping::translate_tgds(p).program, b));
}

TEST(Semantics, MinimalSolutionsOfASingleExistential) {
  const auto p = mapping::parse_mapping("tgd: R(x) -> S(x, z).");
  DomainBudget b;
  b.extra_constants = 1;
  const auto minimal = minimal_solutions(parse_facts("R(a)."), p, b);
  EXPECT_EQ(minimal.size(), 2u);  // z = a or the fresh constant
  EXPECT_EQ(gcwa_star_solutions(parse_facts("R(a)."), p, b).size(), 3u);
}

TEST(Certain, UnionSemanticsDiffer) {
  const auto p = mapping::parse_mapping(fixture("departments.map"));
  const auto i = parse_facts(fixture("departments.facts"));
  const auto q = query::parse_query(fixture("departments.q"));
  EXPECT_TRUE(certain_oracle(Semantics::GcwaStar, i, p, q).truth());
  EXPECT_FALSE(certain_oracle(Semantics::Abd, i, p, q).truth());
}

TEST(Existence, ChaseDecidesDensityOne) {
  const auto p = mapping::parse_mapping(fixture("empty_semantics.map"));
  const auto v = exists_solution_general(parse_facts(fixture("empty_semantics.facts")), p);
  EXPECT_FALSE(v.exists);
  EXPECT_TRUE(v.authoritative);
}

TEST(Budget, NodeLimitThrows) {
  const auto p = mapping::parse_mapping("tgd: R(x) -> S(x, z), S(z, w).");
  DomainBudget b;
  b.extra_constants = 3;
  b.max_nodes = 10;
  EXPECT_THROW(enumerate_owa_solutions(parse_facts("R(a). R(b). R(c)."), p, b), BudgetExceeded);
}

}  // namespace
}  // namespace dx::oracle
