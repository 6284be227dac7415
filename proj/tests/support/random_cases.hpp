#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dx/core/instance.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/mapping/parser.hpp"
#include "dx/query/query.hpp"

namespace dx::testing {

struct RelationShape {
  std::string name;
  std::size_t arity;
};

inline const std::vector<RelationShape> kSourceRelations{{"R", 2}, {"P", 1}};
inline const std::vector<RelationShape> kTargetRelations{{"S", 2}, {"T", 2}, {"U", 1}};

struct RandomCase {
  std::string mapping_text;
  mapping::MappingProgram program;
  Instance source;
};

class CaseGenerator {
 public:
  explicit CaseGenerator(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  T pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  // Tgd program: 1-2 tgds with 1-2 body atoms, 1-3 head atoms and at most one existential
  // variable each, optionally a target egd; instance of 1..max_facts facts over a small pool.
  RandomCase tgd_case(std::size_t max_facts, double egd_probability = 0.2) {
    for (;;) {
      RandomCase c;
      const int tgds = uniform(1, 2);
      for (int t = 0; t < tgds; ++t) c.mapping_text += "tgd: " + tgd_text() + ".\n";
      if (chance(egd_probability)) c.mapping_text += "egd: " + egd_text() + ".\n";
      try {
        c.program = mapping::parse_mapping(c.mapping_text);
        if (!c.program.egds.empty()) mapping::translate_tgds(c.program);
      } catch (const std::exception&) {
        continue;
      }
      c.source = instance(max_facts);
      return c;
    }
  }

  Instance instance(std::size_t max_facts) {
    const std::vector<std::string> pool =
        chance(0.5) ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"a", "b", "c"};
    Instance out;
    const int n = uniform(1, static_cast<int>(max_facts));
    while (out.size() < static_cast<std::size_t>(n)) {
      const auto rel = pick(kSourceRelations);
      std::vector<Term> terms;
      for (std::size_t i = 0; i < rel.arity; ++i) terms.push_back(Term::constant(pick(pool)));
      out.insert(Fact(rel.name, terms));
    }
    return out;
  }

  // Boolean or unary UCQ over the target schema.
  std::string ucq_text() {
    const bool unary = chance(0.4);
    std::string text = unary ? "q(x) :- " : "q() :- ";
    const int disjuncts = uniform(1, 2);
    for (int d = 0; d < disjuncts; ++d) {
      if (d) text += " | ";
      std::vector<std::string> atoms;
      const int n = uniform(1, 3);
      bool anchored = !unary;
      for (int i = 0; i < n; ++i) {
        const auto rel = pick(kTargetRelations);
        std::string atom = rel.name + "(";
        for (std::size_t k = 0; k < rel.arity; ++k) {
          if (k) atom += ", ";
          const std::string v = chance(0.1) ? "\"a\"" : pick(std::vector<std::string>{"x", "y", "z"});
          anchored = anchored || v == "x";
          atom += v;
        }
        atoms.push_back(atom + ")");
      }
      if (!anchored) atoms.push_back("U(x)");
      text += "(";
      for (std::size_t i = 0; i < atoms.size(); ++i) text += (i ? ", " : "") + atoms[i];
      text += ")";
    }
    return text + ".";
  }

  // forall-query whose matrix is `conjunction -> disjunction` over the target schema.
  std::string universal_text() {
    const std::vector<std::string> vars{"x", "y", "z"};
    auto atom = [&](const std::vector<std::string>& pool) {
      const auto rel = pick(kTargetRelations);
      std::string a = rel.name + "(";
      for (std::size_t k = 0; k < rel.arity; ++k) a += (k ? ", " : "") + (chance(0.1) ? std::string("\"a\"") : pick(pool));
      return a + ")";
    };
    std::vector<std::string> lhs;
    const int n = uniform(1, 2);
    for (int i = 0; i < n; ++i) lhs.push_back(atom(vars));
    std::vector<std::string> rhs;
    const int m = uniform(1, 2);
    for (int i = 0; i < m; ++i) {
      const int kind = uniform(0, 2);
      if (kind == 0) rhs.push_back(atom(vars));
      else if (kind == 1) rhs.push_back(pick(vars) + " = " + pick(vars));
      else rhs.push_back(pick(vars) + " = \"" + pick(std::vector<std::string>{"a", "b"}) + "\"");
    }
    std::string text = "q() :- forall x, y, z: ";
    for (std::size_t i = 0; i < lhs.size(); ++i) text += (i ? " & " : "") + lhs[i];
    text += " -> ";
    for (std::size_t i = 0; i < rhs.size(); ++i) text += (i ? " | " : "") + rhs[i];
    return text + ".";
  }

  // One positive atom and 1-2 negated atoms over its variables.
  std::string cq_neg_text() {
    const auto pos = pick(kTargetRelations);
    std::vector<std::string> vars;
    std::string text = "q() :- " + pos.name + "(";
    for (std::size_t k = 0; k < pos.arity; ++k) {
      vars.push_back(k == 0 ? "x" : pick(std::vector<std::string>{"x", "y"}));
      text += (k ? ", " : "") + vars.back();
    }
    text += ")";
    const int n = uniform(1, 2);
    for (int i = 0; i < n; ++i) {
      const auto rel = pick(kTargetRelations);
      text += ", not " + rel.name + "(";
      for (std::size_t k = 0; k < rel.arity; ++k) text += (k ? ", " : "") + (chance(0.15) ? std::string("\"a\"") : pick(vars));
      text += ")";
    }
    return text + ".";
  }

 private:
  std::string tgd_text() {
    const std::vector<std::string> body_vars{"x", "y", "w"};
    std::vector<std::string> used;
    std::string body;
    const int n = uniform(1, 2);
    for (int i = 0; i < n; ++i) {
      const auto rel = pick(kSourceRelations);
      body += (i ? ", " : "") + rel.name + "(";
      for (std::size_t k = 0; k < rel.arity; ++k) {
        const auto v = pick(body_vars);
        if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
        body += (k ? ", " : "") + v;
      }
      body += ")";
    }
    std::vector<std::string> head_pool = used;
    if (chance(0.7)) head_pool.push_back("z");
    std::string head;
    const int m = uniform(1, 3);
    for (int i = 0; i < m; ++i) {
      const auto rel = pick(kTargetRelations);
      head += (i ? ", " : "") + rel.name + "(";
      for (std::size_t k = 0; k < rel.arity; ++k) head += (k ? ", " : "") + pick(head_pool);
      head += ")";
    }
    return body + " -> " + head;
  }

  std::string egd_text() {
    const auto rel = pick(std::vector<RelationShape>{{"S", 2}, {"T", 2}});
    if (chance(0.5)) return rel.name + "(x, y), " + rel.name + "(x, w) -> y = w";
    return rel.name + "(x, y), U(x) -> x = y";
  }

  std::mt19937 rng_;
};

}  // namespace dx::testing
