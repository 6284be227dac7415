#include <gtest/gtest.h>

#include "dx/chase/chase.hpp"
#include "dx/core/io.hpp"
#include "dx/mapping/parser.hpp"
#include "dx/query/eval.hpp"
#include "dx/query/query.hpp"

namespace dx::query {
namespace {

const auto kTgds = mapping::parse_mapping("tgd: R(x, y) -> S(x, y).\ntgd: P(x) -> U(x).\n");

TEST(Parser, ModesAndHeads) {
  EXPECT_EQ(parse_query("q(x) :- S(x, y), U(y).").mode, Mode::Existential);
  EXPECT_EQ(parse_query("q() :- forall x, y: S(x, y) -> U(x).").mode, Mode::Universal);
  EXPECT_TRUE(parse_query("q() :- S(x, y).").boolean());
  EXPECT_THROW(parse_query("q(w) :- S(x, y)."), UnsafeQueryError);
}

TEST(Classify, PicksNarrowestClass) {
  EXPECT_EQ(classify(parse_query("q(x) :- S(x, y) ; U(x)."), kTgds).tag, QueryClass::UCQ);
  EXPECT_EQ(classify(parse_query("q() :- S(x, y), x != y."), kTgds).tag, QueryClass::UCQNeq1);
  EXPECT_EQ(classify(parse_query("q() :- S(x, y), not U(x)."), kTgds).tag, QueryClass::CQNeg1);
  EXPECT_EQ(classify(parse_query("q() :- forall x, y: S(x, y) -> U(y)."), kTgds).tag, QueryClass::Universal);
}

TEST(Dnf, DistributesOverDisjunction) {
  const auto q = parse_query("q() :- S(x, y), (U(x) ; U(y)).");
  EXPECT_EQ(q.disjuncts.size(), 2u);
}

TEST(NaiveEval, DropsTuplesWithNulls) {
  const auto t = parse_facts("S(a, ?o1). S(b, c).");
  const auto answers = naive_eval(t, parse_query("q(y) :- S(x, y)."));
  EXPECT_EQ(answers, (std::set<Tuple>{{Term::constant("c")}}));
  EXPECT_TRUE(naive_eval(t, parse_query("q() :- S(a, y).")).size() == 1);
}

TEST(Disequality, ClosedNullsMustDifferUnderTheCondition) {
  const auto t = parse_facts("K(a, ?c1). K(c, ?o1).");
  const auto q = parse_query("q() :- K(a, x), K(c, y), x != y.");
  EXPECT_TRUE(eval_ucq_neq1(t, parse_condition("?c1 != ?o1"), q, {}));
  EXPECT_FALSE(eval_ucq_neq1(t, {}, q, {}));
}

TEST(CertainAnswers, FullTgdsBehaveLikeCopying) {
  const auto r = certain_answers(parse_facts("R(a, b). P(b)."), kTgds, parse_query("q(x) :- S(x, y), U(y)."));
  ASSERT_EQ(r.status, CertainAnswers::Status::Answers);
  EXPECT_EQ(r.answers, (std::set<Tuple>{{Term::constant("a")}}));
}

TEST(CertainAnswers, NegationOverExactTarget) {
  // ABD solutions of full tgds are exactly the chase result, so negation is decided there.
  const auto r = certain_answers(parse_facts("R(a, b). P(a)."), kTgds, parse_query("q() :- S(x, y), not U(y)."));
  ASSERT_EQ(r.status, CertainAnswers::Status::Answers);
  EXPECT_TRUE(r.truth());
}

TEST(CandidateTuples, CartesianPower) {
  EXPECT_EQ(candidate_tuples({Term::constant("a"), Term::constant("b")}, 2).size(), 4u);
  EXPECT_EQ(candidate_tuples({Term::constant("a")}, 0).size(), 1u);
}

}  // namespace
}  // namespace dx::query
