#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dx/core/homomorphism.hpp"

namespace dx::query {

// First-order formula over relational atoms, equalities and disequalities.
struct Formula {
  enum class Kind { True, False, Atom, Eq, Neq, Not, And, Or, Implies, Exists, Forall };

  Kind kind = Kind::True;
  Fact atom;                       // Atom
  Term left, right;                // Eq, Neq
  std::vector<Term> bound;         // Exists, Forall
  std::vector<Formula> children;   // Not (1), And/Or (n), Implies (2), quantifiers (1)

  static Formula truth(bool value);
  static Formula make_atom(Fact atom);
  static Formula equal(Term l, Term r);
  static Formula not_equal(Term l, Term r);
  static Formula negate(Formula f);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implies(Formula premise, Formula conclusion);
  static Formula quantified(Kind kind, std::vector<Term> vars, Formula body);

  bool quantifier_free() const;
  std::set<Term> free_variables() const;
  std::set<Term> constants() const;
  std::size_t quantified_variable_count() const;
  std::string str() const;
};

// One conjunct of a UCQ-family query; `head` is the query head as seen in this disjunct.
struct Disjunct {
  std::vector<Term> head;
  std::vector<Fact> positive;
  std::vector<Fact> negative;
  std::vector<std::pair<Term, Term>> disequalities;
  std::vector<std::pair<Term, Term>> equalities;

  // Eliminates equalities by substitution and folds literals over constants.
  // Returns nullopt when the disjunct is unsatisfiable on its face.
  std::optional<Disjunct> normalized() const;
  // Binds the head to `tuple` and normalizes.
  std::optional<Disjunct> instantiate(const std::vector<Term>& tuple) const;
  // Drops literals mentioning variables absent from every positive atom; over an infinite
  // domain such variables can always take a fresh value.
  Disjunct without_unanchored() const;

  Formula to_formula() const;
  std::string str() const;
};

enum class Mode { Existential, Universal, FirstOrder };

struct Query {
  std::string name = "q";
  std::vector<Term> head;
  Mode mode = Mode::Existential;
  std::vector<Disjunct> disjuncts;  // Existential
  std::vector<Term> universal;      // Universal: ∀ vars
  Formula matrix;                   // Universal: quantifier-free matrix; FirstOrder: the body

  bool boolean() const { return head.empty(); }
  // Body as a formula whose free variables are exactly the head variables.
  Formula to_formula() const;
  std::set<Term> constants() const;
  std::string str() const;
};

class UnsafeQueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// `q(x) :- body.` where body is a UCQ (`,` conjunction, `;` disjunction, `not` atoms, = and !=),
// `forall vars: matrix`, or a general formula with exists/forall, !, &, |, ->.
Query parse_query(std::string_view text);

// DNF of a quantifier-free formula as disjuncts over `head`; throws std::length_error past `cap`.
std::vector<Disjunct> to_dnf(const Formula& formula, const std::vector<Term>& head, std::size_t cap = 64);

}  // namespace dx::query
