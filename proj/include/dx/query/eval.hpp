#pragma once

#include <set>
#include <string>
#include <vector>

#include "dx/core/condition.hpp"
#include "dx/mapping/program.hpp"
#include "dx/query/query.hpp"

namespace dx::query {

using Tuple = std::vector<Term>;

enum class QueryClass { UCQ, UCQNeq1, Universal, CQNeg1, FullFO, Unsupported };

std::string class_name(QueryClass c);

struct Classification {
  QueryClass tag = QueryClass::Unsupported;
  std::string reason;
};

// Unidirectional programs are classified through their translation to abds.
Classification classify(const Query& q, const mapping::MappingProgram& program);

// Evaluates q on the table with nulls as plain values; keeps null-free answers.
std::set<Tuple> naive_eval(const Instance& table, const Query& q);
bool naive_holds(const Instance& table, const Query& q, const Tuple& tuple);

// Certain truth of q(t) for UCQs with at most one disequality per disjunct.
bool eval_ucq_neq1(const SemiNaiveTable& table, const GlobalCondition& condition, const Query& q,
                   const Tuple& tuple);

// Is there J ∈ rep(T, phi*) where some disjunct holds for `tuple`?
bool exists_eval(const SemiNaiveTable& table, const GlobalCondition& condition,
                 const std::vector<Disjunct>& disjuncts, const Tuple& tuple);

// Certain truth of a universal query: no J ∈ rep(T, phi*) satisfies its negation.
bool eval_universal(const SemiNaiveTable& table, const GlobalCondition& condition, const Query& q,
                    const Tuple& tuple);

// Certain truth of a CQ with negation and one positive atom over a table with only open nulls.
// Throws std::invalid_argument when the table has closed nulls.
bool eval_cq_neg1(const SemiNaiveTable& table, const Query& q, const Tuple& tuple);

// q(tuple) on one ground instance. Quantifiers range over adom(J) ∪ consts(q) ∪ tuple plus one
// fresh constant per quantified variable, which is exact for generic queries.
bool holds(const Instance& instance, const Query& q, const Tuple& tuple);
bool holds(const Instance& instance, const Formula& formula, const Homomorphism& binding);

// Direct model checking on a ground chase result; throws std::invalid_argument otherwise.
bool eval_fo_full(const Instance& table, const Query& q, const Tuple& tuple);

// All tuples of the given arity over `constants`, in lexicographic order.
std::vector<Tuple> candidate_tuples(const std::set<Term>& constants, std::size_t arity);

struct CertainAnswers {
  enum class Status { Answers, NoSolutions, Unsupported };
  Status status = Status::Answers;
  QueryClass query_class = QueryClass::Unsupported;
  std::set<Tuple> answers;
  std::string detail;
  std::vector<std::string> warnings;

  bool truth() const { return !answers.empty(); }
};

// Chase, classify and dispatch. Non-boolean answers range over dom(I) ∪ dom(T) ∪ consts(q).
CertainAnswers certain_answers(const Instance& source, const mapping::MappingProgram& program, const Query& q);

std::string render_tuple(const Tuple& tuple);

}  // namespace dx::query
