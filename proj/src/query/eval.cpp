#include "dx/query/eval.hpp"

#include <algorithm>
#include <map>

#include "dx/chase/chase.hpp"
#include "dx/core/io.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/unification/unifier.hpp"

namespace dx::query {

std::string class_name(QueryClass c) {
  switch (c) {
    case QueryClass::UCQ: return "UCQ";
    case QueryClass::UCQNeq1: return "UCQ!=1";
    case QueryClass::Universal: return "UNIVERSAL";
    case QueryClass::CQNeg1: return "CQNEG1";
    case QueryClass::FullFO: return "FULL_FO";
    case QueryClass::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

std::string render_tuple(const Tuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) out += (i ? ", " : "") + render_constant(tuple[i]);
  return out + ")";
}

namespace {

mapping::MappingProgram annotated_view(const mapping::MappingProgram& program) {
  if (program.annotated() || program.tgds.empty()) return program;
  return mapping::translate_tgds(program).program;
}

std::set<Term> variables_in(const Fact& f) {
  std::set<Term> out;
  for (const auto& t : f.terms)
    if (t.is_variable()) out.insert(t);
  return out;
}

}  // namespace

Classification classify(const Query& q, const mapping::MappingProgram& input) {
  const auto program = annotated_view(input);
  const int density = mapping::annotation_density(program).overall;
  const auto forward = mapping::derive_views(program).forward;
  const bool full = mapping::all_full(forward);
  auto fallback = [&](std::string why) -> Classification {
    if (full) return {QueryClass::FullFO, "every tgd of the forward view is full"};
    return {QueryClass::Unsupported, std::move(why)};
  };
  if (density > 1) return fallback("annotation density " + std::to_string(density) + " > 1");

  if (q.mode == Mode::Universal) return {QueryClass::Universal, "universal query"};
  if (q.mode == Mode::FirstOrder) return fallback("general first-order query over a mapping with existentials");

  bool any_negation = false, any_disequality = false, at_most_one = true;
  for (const auto& d : q.disjuncts) {
    any_negation |= !d.negative.empty();
    any_disequality |= !d.disequalities.empty();
    at_most_one &= d.disequalities.size() <= 1;
  }
  if (!any_negation && !any_disequality) return {QueryClass::UCQ, "union of conjunctive queries"};
  if (!any_negation && at_most_one) return {QueryClass::UCQNeq1, "at most one disequality per disjunct"};
  if (!any_negation) return fallback("more than one disequality in a disjunct");

  if (q.disjuncts.size() != 1) return fallback("negation in a union of several disjuncts");
  const Disjunct& d = q.disjuncts.front();
  if (d.positive.size() != 1) return fallback("negated query without exactly one positive atom");
  if (!d.disequalities.empty() || !d.equalities.empty()) return fallback("negated query with (dis)equalities");
  const auto anchored = variables_in(d.positive.front());
  for (const auto& n : d.negative) {
    const auto vars = variables_in(n);
    if (!std::includes(anchored.begin(), anchored.end(), vars.begin(), vars.end()))
      return fallback("negated atom uses variables outside the positive atom");
  }
  if (!mapping::is_gav_reducible(forward)) return fallback("forward view is not GAV-reducible");
  if (mapping::equates_affected_variables(program)) return fallback("an aegd equates affected-position variables");
  return {QueryClass::CQNeg1, "one positive atom, GAV-reducible mapping"};
}

// ---- naive evaluation ----

namespace {

// Disjunct matches in `table`, nulls treated as values; visit(h) returns false to stop.
template <class Visit>
void for_each_naive_match(const Instance& table, const Disjunct& d, Visit&& visit) {
  const Disjunct e = d.without_unanchored();
  RelationIndex index(table);
  auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& { return index.facts(e.positive[i].relation); };
  auto free = [](const Term& t) { return t.is_variable(); };
  Binding binding;
  std::vector<const Fact*> chosen;
  for_each_match(e.positive, candidates, free, binding, chosen, [&](const Binding& b, const auto&) {
    for (const auto& [l, r] : e.disequalities)
      if (b.resolve(l) == b.resolve(r)) return true;
    for (const auto& n : e.negative) {
      Fact g = n;
      for (auto& t : g.terms) t = b.resolve(t);
      if (table.contains(g)) return true;
    }
    return visit(b);
  });
}

}  // namespace

std::set<Tuple> naive_eval(const Instance& table, const Query& q) {
  if (q.mode != Mode::Existential) throw std::invalid_argument("naive evaluation needs a UCQ-family query");
  std::set<Tuple> out;
  for (const auto& raw : q.disjuncts) {
    auto d = raw.normalized();
    if (!d) continue;
    for_each_naive_match(table, *d, [&](const Binding& b) {
      Tuple t;
      for (const auto& h : d->head) t.push_back(b.resolve(h));
      if (std::all_of(t.begin(), t.end(), [](const Term& x) { return x.is_constant(); })) out.insert(std::move(t));
      return true;
    });
  }
  return out;
}

bool naive_holds(const Instance& table, const Query& q, const Tuple& tuple) {
  for (const auto& raw : q.disjuncts) {
    auto d = raw.instantiate(tuple);
    if (!d) continue;
    bool found = false;
    for_each_naive_match(table, *d, [&](const Binding&) { return !(found = true); });
    if (found) return true;
  }
  return false;
}

// ---- UCQ with one disequality ----

bool eval_ucq_neq1(const SemiNaiveTable& table, const GlobalCondition& condition, const Query& q,
                   const Tuple& tuple) {
  std::vector<Disjunct> plain, with_neq;
  for (const auto& raw : q.disjuncts) {
    auto d = raw.instantiate(tuple);
    if (!d) continue;
    Disjunct e = d->without_unanchored();
    e.head.clear();
    (e.disequalities.empty() ? plain : with_neq).push_back(std::move(e));
  }
  Query q0;
  q0.disjuncts = plain;
  if (naive_holds(table, q0, {})) return true;

  Instance current = table;
  std::vector<std::pair<Term, Term>> equalities;
  auto free = [](const Term& t) { return t.is_variable(); };
  bool changed = true;
  while (changed) {
    changed = false;
    RelationIndex index(current);
    for (const auto& d : with_neq) {
      auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& {
        return index.facts(d.positive[i].relation);
      };
      const auto [x, y] = d.disequalities.front();
      std::optional<std::pair<Term, Term>> merge;
      Binding binding;
      std::vector<const Fact*> chosen;
      for_each_match(d.positive, candidates, free, binding, chosen, [&](const Binding& b, const auto&) {
        Term l = b.resolve(x), r = b.resolve(y);
        if (l == r) return true;
        merge = {l, r};
        return false;
      });
      if (!merge) continue;
      auto [l, r] = *merge;
      if (l.is_constant() && r.is_constant()) return true;
      equalities.emplace_back(l, r);
      if (!sat_check(equalities, condition)) return true;
      // Keep a constant, else a closed null, else the smaller term.
      Term from = l, to = r;
      if (from.is_constant() || (!to.is_constant() && (from.is_closed_null() > to.is_closed_null() ||
                                                        (from.is_closed_null() == to.is_closed_null() && from < to))))
        std::swap(from, to);
      Instance next;
      for (Fact f : current) {
        for (auto& t : f.terms)
          if (t == from) t = to;
        next.insert(f);
      }
      current = std::move(next);
      changed = true;
      break;
    }
  }
  return naive_holds(current, q0, {});
}

// ---- EXISTS_EVAL ----

namespace {

// phi* over copies: literal x != y holds iff the value sets of x and y are disjoint, so each
// literal becomes a conjunction over copy pairs and each clause distributes into CNF.
void expand_condition(const GlobalCondition& condition, std::size_t copies, GlobalCondition& out) {
  auto versions = [&](const Term& t) {
    std::vector<Term> vs;
    if (!t.is_open_null()) return std::vector<Term>{t};
    for (std::size_t c = 0; c < copies; ++c) vs.push_back(unification::copy_term(t, c));
    return vs;
  };
  for (const auto& clause : condition.clauses()) {
    std::vector<std::vector<Disequality>> options;
    for (const auto& lit : clause) {
      std::vector<Disequality> expanded;
      for (const auto& a : versions(lit.left))
        for (const auto& b : versions(lit.right)) expanded.push_back(Disequality::make(a, b));
      options.push_back(std::move(expanded));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      Clause c;
      for (std::size_t i = 0; i < options.size(); ++i) c.push_back(options[i][pick[i]]);
      out.add(std::move(c));
      std::size_t i = 0;
      while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == options.size()) break;
    }
  }
}

}  // namespace

bool exists_eval(const SemiNaiveTable& table, const GlobalCondition& condition,
                 const std::vector<Disjunct>& disjuncts, const Tuple& tuple) {
  const std::vector<Fact> facts = table.to_vector();
  for (const auto& raw : disjuncts) {
    auto instantiated = raw.instantiate(tuple);
    if (!instantiated) continue;
    const Disjunct d = instantiated->without_unanchored();
    std::vector<unification::Unifier> unifiers;
    if (d.positive.empty()) {
      unifiers.emplace_back();
    } else {
      unifiers = unification::unifier_closures(d.positive, facts);
    }
    for (const auto& u : unifiers) {
      const std::size_t copies = std::max<std::size_t>(1, u.copies);
      GlobalCondition phi;
      expand_condition(condition, copies, phi);
      bool blocked = false;
      for (const auto& n : d.negative) {
        for (std::size_t c = 0; c < copies && !blocked; ++c) {
          for (const auto& g : facts) {
            if (g.relation != n.relation || g.arity() != n.arity()) continue;
            const Fact copied = unification::copy_fact(g, c);
            Clause clause;
            bool satisfied = false;
            for (std::size_t p = 0; p < n.terms.size(); ++p) {
              const Term& a = n.terms[p];
              const Term& b = copied.terms[p];
              if (a == b) continue;
              if (a.is_constant() && b.is_constant()) satisfied = true;
              clause.push_back(Disequality::make(a, b));
            }
            if (satisfied) continue;
            if (clause.empty()) {
              blocked = true;
              break;
            }
            phi.add(std::move(clause));
          }
        }
      }
      if (blocked) continue;
      for (const auto& [l, r] : d.disequalities) phi.add({Disequality::make(l, r)});
      if (sat_check(u.equalities, phi)) return true;
    }
  }
  return false;
}

bool eval_universal(const SemiNaiveTable& table, const GlobalCondition& condition, const Query& q,
                    const Tuple& tuple) {
  if (q.mode != Mode::Universal) throw std::invalid_argument("eval_universal needs a universal query");
  const auto negation = to_dnf(Formula::negate(q.matrix), q.head);
  return !exists_eval(table, condition, negation, tuple);
}

// ---- CQ with negation and one positive atom ----

bool eval_cq_neg1(const SemiNaiveTable& table, const Query& q, const Tuple& tuple) {
  if (q.mode != Mode::Existential || q.disjuncts.size() != 1)
    throw std::invalid_argument("eval_cq_neg1 needs a single-disjunct query");
  for (const auto& n : table.nulls())
    if (n.is_closed_null()) throw std::invalid_argument("eval_cq_neg1 needs a table with only open nulls");
  auto instantiated = q.disjuncts.front().instantiate(tuple);
  if (!instantiated) return false;
  const Disjunct d = instantiated->without_unanchored();
  if (d.positive.size() != 1) throw std::invalid_argument("eval_cq_neg1 needs exactly one positive atom");
  const Fact& positive = d.positive.front();

  // Under the preconditions each null lies in one fact, so rep(T) is every J whose facts are
  // instances of T-facts and which instantiates each T-fact at least once. Search for such a J
  // with no surviving match: the largest subset of the instance universe closed under "every
  // match has a present blocker" must still cover T.
  std::set<Term> constants = table.constants();
  for (const auto& t : q.constants()) constants.insert(t);
  for (const auto& t : tuple) constants.insert(t);
  std::size_t fresh = 1;
  for (const auto& f : table) {
    std::set<Term> nulls;
    for (const auto& t : f.terms)
      if (t.is_null()) nulls.insert(t);
    fresh = std::max(fresh, nulls.size() + 1);
  }
  for (std::size_t i = 1; i <= fresh; ++i) constants.insert(Term::constant("_fresh" + std::to_string(i)));
  const std::vector<Term> values(constants.begin(), constants.end());

  const std::vector<Fact> facts = table.to_vector();
  std::map<Fact, std::vector<std::size_t>> universe;  // instance -> T-facts it instantiates
  for (std::size_t k = 0; k < facts.size(); ++k) {
    std::vector<Term> nulls;
    for (const auto& t : facts[k].terms)
      if (t.is_null() && std::find(nulls.begin(), nulls.end(), t) == nulls.end()) nulls.push_back(t);
    std::vector<std::size_t> pick(nulls.size(), 0);
    while (true) {
      Fact g = facts[k];
      for (auto& t : g.terms)
        if (t.is_null()) t = values[pick[std::find(nulls.begin(), nulls.end(), t) - nulls.begin()]];
      universe[g].push_back(k);
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == values.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }

  std::set<Fact> alive;
  for (const auto& [f, _] : universe) alive.insert(f);
  auto free = [](const Term& t) { return t.is_variable(); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      Binding b;
      bool doomed = false;
      if (match_atom(positive, *it, b, free)) {
        bool excluded = false;
        for (const auto& [l, r] : d.disequalities) excluded |= b.resolve(l) == b.resolve(r);
        if (!excluded) {
          doomed = true;
          for (const auto& n : d.negative) {
            Fact kill = n;
            for (auto& t : kill.terms) t = b.resolve(t);
            if (alive.count(kill)) {
              doomed = false;
              break;
            }
          }
        }
      }
      if (doomed) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<bool> covered(facts.size(), false);
  for (const auto& f : alive)
    for (std::size_t k : universe.at(f)) covered[k] = true;
  return !std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

// ---- first-order model checking ----

namespace {

struct FoContext {
  const Instance& instance;
  std::vector<Term> domain;
};

bool eval(const FoContext& ctx, const Formula& f, Homomorphism& binding) {
  using Kind = Formula::Kind;
  auto value = [&](const Term& t) {
    auto it = binding.find(t);
    return it == binding.end() ? t : it->second;
  };
  switch (f.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      Fact g = f.atom;
      for (auto& t : g.terms) t = value(t);
      return ctx.instance.contains(g);
    }
    case Kind::Eq: return value(f.left) == value(f.right);
    case Kind::Neq: return value(f.left) != value(f.right);
    case Kind::Not: return !eval(ctx, f.children[0], binding);
    case Kind::And:
      return std::all_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return eval(ctx, c, binding); });
    case Kind::Or:
      return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return eval(ctx, c, binding); });
    case Kind::Implies: return !eval(ctx, f.children[0], binding) || eval(ctx, f.children[1], binding);
    case Kind::Exists:
    case Kind::Forall: {
      const bool want = f.kind == Kind::Exists;
      std::vector<std::optional<Term>> saved;
      for (const auto& v : f.bound) {
        auto it = binding.find(v);
        saved.push_back(it == binding.end() ? std::nullopt : std::optional<Term>(it->second));
      }
      bool result = !want;
      std::vector<std::size_t> pick(f.bound.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < f.bound.size(); ++i) binding[f.bound[i]] = ctx.domain[pick[i]];
        if (eval(ctx, f.children[0], binding) == want) {
          result = want;
          break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == ctx.domain.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      for (std::size_t i = 0; i < f.bound.size(); ++i) {
        if (saved[i]) binding[f.bound[i]] = *saved[i];
        else binding.erase(f.bound[i]);
      }
      return result;
    }
  }
  return false;
}

}  // namespace

bool holds(const Instance& instance, const Formula& formula, const Homomorphism& binding) {
  std::set<Term> domain = instance.domain();
  for (const auto& c : formula.constants()) domain.insert(c);
  for (const auto& [_, v] : binding) domain.insert(v);
  const std::size_t fresh = formula.quantified_variable_count();
  for (std::size_t i = 1; i <= fresh; ++i) domain.insert(Term::constant("_fresh" + std::to_string(i)));
  FoContext ctx{instance, {domain.begin(), domain.end()}};
  Homomorphism b = binding;
  return eval(ctx, formula, b);
}

bool holds(const Instance& instance, const Query& q, const Tuple& tuple) {
  if (tuple.size() != q.head.size()) throw std::invalid_argument("answer tuple arity does not match the query head");
  if (q.mode == Mode::Existential) return naive_holds(instance, q, tuple);
  Homomorphism binding;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    auto [it, fresh] = binding.emplace(q.head[i], tuple[i]);
    if (!fresh && it->second != tuple[i]) return false;
  }
  return holds(instance, q.to_formula(), binding);
}

bool eval_fo_full(const Instance& table, const Query& q, const Tuple& tuple) {
  if (!table.is_ground()) throw std::invalid_argument("eval_fo_full needs a ground table");
  return holds(table, q, tuple);
}

std::vector<Tuple> candidate_tuples(const std::set<Term>& constants, std::size_t arity) {
  std::vector<Tuple> out;
  const std::vector<Term> values(constants.begin(), constants.end());
  if (arity > 0 && values.empty()) return out;
  std::vector<std::size_t> pick(arity, 0);
  while (true) {
    Tuple t;
    for (std::size_t i : pick) t.push_back(values[i]);
    out.push_back(std::move(t));
    std::size_t i = arity;
    while (i > 0 && ++pick[i - 1] == values.size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

CertainAnswers certain_answers(const Instance& source, const mapping::MappingProgram& input, const Query& q) {
  CertainAnswers out;
  mapping::MappingProgram program = input;
  if (!input.annotated() && !input.tgds.empty()) {
    auto translation = mapping::translate_tgds(input);
    program = std::move(translation.program);
    out.warnings = std::move(translation.warnings);
  }
  const auto cls = classify(q, program);
  out.query_class = cls.tag;
  auto chased = chase::annotated_chase(source, program);
  out.warnings.insert(out.warnings.end(), chased.warnings.begin(), chased.warnings.end());
  if (!chased.succeeded()) {
    out.status = CertainAnswers::Status::NoSolutions;
    out.detail = chase::phase_name(chased.failure().phase) + " failure: " + chased.failure().witness;
    return out;
  }
  if (cls.tag == QueryClass::Unsupported) {
    out.status = CertainAnswers::Status::Unsupported;
    out.detail = cls.reason;
    return out;
  }
  const auto& rep = chased.representative();
  if (cls.tag == QueryClass::UCQ) {
    out.answers = naive_eval(rep.table, q);
    return out;
  }
  std::set<Term> constants = source.constants();
  for (const auto& c : rep.table.constants()) constants.insert(c);
  for (const auto& c : q.constants()) constants.insert(c);
  for (const auto& t : candidate_tuples(constants, q.head.size())) {
    bool certain = false;
    switch (cls.tag) {
      case QueryClass::UCQNeq1: certain = eval_ucq_neq1(rep.table, rep.condition, q, t); break;
      case QueryClass::Universal: certain = eval_universal(rep.table, rep.condition, q, t); break;
      case QueryClass::CQNeg1: certain = eval_cq_neg1(rep.table, q, t); break;
      case QueryClass::FullFO: certain = eval_fo_full(rep.table, q, t); break;
      default: break;
    }
    if (certain) out.answers.insert(t);
  }
  return out;
}

}  // namespace dx::query
