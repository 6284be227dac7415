#include "dx/oracle/oracle.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

#include "dx/chase/chase.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/oracle/kernel.hpp"
#include "setting.hpp"

namespace dx::oracle {

using namespace detail;

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::Abd: return "abd";
    case Semantics::Inference: return "inf";
    case Semantics::Owa: return "owa";
    case Semantics::GcwaStar: return "gcwa";
  }
  return "?";
}

Semantics parse_semantics(const std::string& name) {
  if (name == "abd") return Semantics::Abd;
  if (name == "inf") return Semantics::Inference;
  if (name == "owa") return Semantics::Owa;
  if (name == "gcwa") return Semantics::GcwaStar;
  throw std::invalid_argument("unknown semantics '" + name + "' (expected abd, inf, owa or gcwa)");
}

std::vector<Term> bounded_domain(const Instance& source, const mapping::MappingProgram& program,
                                 const std::set<Term>& more, const DomainBudget& budget) {
  std::set<Term> domain = source.domain();
  for (const auto& c : program.constants()) domain.insert(c);
  domain.insert(more.begin(), more.end());
  for (std::size_t i = 1, added = 0; added < budget.extra_constants; ++i) {
    const Term fresh = Term::constant("_n" + std::to_string(i));
    if (domain.insert(fresh).second) ++added;
  }
  return {domain.begin(), domain.end()};
}

namespace {

mapping::MappingProgram annotated(const mapping::MappingProgram& program) {
  if (program.annotated() || program.tgds.empty()) return program;
  return mapping::translate_tgds(program).program;
}

void require_tgds(const mapping::MappingProgram& program) {
  if (program.annotated()) throw std::invalid_argument("inference-based semantics needs a tgd/egd program");
}

// Inference guard for one tgd: no head match inside the inferred facts may use a weakly
// inferred tuple while its body is missing from the source. Once every trigger fires, the
// strongly inferred tuples are exactly the existential-free head atoms of all triggers.
struct InferenceGuard {
  const Setting& s;
  std::vector<std::set<Fact>> strong;

  explicit InferenceGuard(const Setting& setting) : s(setting), strong(setting.deps.size()) {
    for (const auto& t : s.triggers) strong[t.dependency].insert(t.strong.begin(), t.strong.end());
  }

  bool holds(std::size_t d, const Instance& inferred) const {
    const Dependency& dep = s.deps[d];
    RelationIndex index(inferred);
    auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& { return index.facts(dep.head[i].relation); };
    auto free = [](const Term& t) { return t.is_variable(); };
    Binding b;
    std::vector<const Fact*> chosen;
    return for_each_match(dep.head, candidates, free, b, chosen, [&](const Binding& m, const auto& used) {
      std::vector<Term> values;
      for (const auto& v : dep.frontier) values.push_back(m.resolve(v));
      if (s.frontier_sets[d].count(values)) return true;
      return std::all_of(used.begin(), used.end(), [&](const Fact* f) { return strong[d].count(*f) != 0; });
    });
  }

  bool operator()(const SearchState& state) const {
    if (!egds_hold(s.egds, state.current)) return false;
    for (std::size_t d = 0; d < s.deps.size(); ++d)
      if (!holds(d, state.dep_current[d])) return false;
    return true;
  }
};

struct AbdGuard {
  const Setting& s;
  bool operator()(const SearchState& state) const {
    return backward_holds(s, state.current, s.frontier_sets) && egds_hold(s.egds, state.current);
  }
};

std::vector<Term> domain_with(const Instance& target, const mapping::MappingProgram& program) {
  std::set<Term> d = target.domain();
  for (const auto& c : program.constants()) d.insert(c);
  return {d.begin(), d.end()};
}

// Shrinks a model of (I, Σ⋄) built from one image per trigger to a minimal one.
Instance minimize_model(const Setting& s, Instance w) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (const auto& e : w) {
      Instance smaller;
      bool ok = true;
      for (const auto& t : s.triggers) {
        const std::vector<Fact>* pick = nullptr;
        for (const auto& image : t.images)
          if (std::find(image.begin(), image.end(), e) == image.end() &&
              std::all_of(image.begin(), image.end(), [&](const Fact& f) { return w.contains(f); })) {
            pick = &image;
            break;
          }
        if (!pick) {
          ok = false;
          break;
        }
        for (const auto& f : *pick) smaller.insert(f);
      }
      if (ok) {
        w = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return w;
}

}  // namespace

AbdVerdict check_abd_solution(const Instance& source, const mapping::MappingProgram& input, const Instance& target,
                              bool general) {
  const auto program = annotated(input);
  const Setting s = make_setting(source, program, View::Labeled, domain_with(target, program));
  std::map<SymbolId, std::set<int>> labels_of;
  for (const auto& [labeled, base] : s.projection) labels_of[base.first].insert(base.second);
  for (const auto& f : target)
    if (!labels_of.count(f.relation)) return {};

  const bool forced = mapping::annotation_cardinality(program).overall <= 1;
  if (forced && !general) {
    Instance labeled;
    for (const auto& f : target) labeled.insert(Fact(mapping::diamond_relation(f.relation, *labels_of[f.relation].begin()), f.terms));
    for (const auto& t : s.triggers) {
      const bool covered = std::any_of(t.images.begin(), t.images.end(), [&](const auto& image) {
        return std::all_of(image.begin(), image.end(), [&](const Fact& f) { return labeled.contains(f); });
      });
      if (!covered) return {};
    }
    if (!backward_holds(s, labeled, s.frontier_sets) || !egds_hold(s.egds, labeled)) return {};
    if (!all_witnessed(s, labeled)) return {};
    return {true, s.labeling(labeled)};
  }

  // Labeling search over the facts of J in order. Backward and aegd violations persist as
  // labeled facts are added, and a trigger whose every image needs a labeled fact that was
  // already left out can never be covered; both prune.
  const auto allowed = images_within(s, [&](const Fact& f) { return target.contains(Fact(s.projection.at(f.relation).first, f.terms)); });
  // Facts with a forced label first, then grouped by their terms so that joins close early.
  std::vector<Fact> facts = target.to_vector();
  std::stable_sort(facts.begin(), facts.end(), [&](const Fact& a, const Fact& b) {
    const auto la = labels_of[a.relation].size(), lb = labels_of[b.relation].size();
    if (la != lb) return la < lb;
    return a.terms < b.terms;
  });
  std::map<Fact, std::size_t> position;
  for (std::size_t i = 0; i < facts.size(); ++i) position[facts[i]] = i;
  std::vector<std::vector<std::vector<Fact>>> options(facts.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const std::vector<int> labels(labels_of[facts[i].relation].begin(), labels_of[facts[i].relation].end());
    for (unsigned mask = 1; mask < (1u << labels.size()); ++mask) {
      std::vector<Fact> option;
      for (std::size_t b = 0; b < labels.size(); ++b)
        if (mask & (1u << b)) option.emplace_back(mapping::diamond_relation(facts[i].relation, labels[b]), facts[i].terms);
      options[i].push_back(std::move(option));
    }
  }
  Instance labeled;
  auto coverable = [&](std::size_t decided) {
    for (std::size_t k = 0; k < s.triggers.size(); ++k) {
      const bool some = std::any_of(allowed[k].begin(), allowed[k].end(), [&](std::size_t idx) {
        const auto& image = s.triggers[k].images[idx];
        return std::all_of(image.begin(), image.end(), [&](const Fact& g) {
          return labeled.contains(g) || position.at(Fact(s.projection.at(g.relation).first, g.terms)) >= decided;
        });
      });
      if (!some) return false;
    }
    return true;
  };
  AbdVerdict verdict;
  NodeBudget budget(DomainBudget{}.max_nodes);
  if (!coverable(0)) return verdict;
  auto go = [&](auto&& self, std::size_t i) -> bool {
    budget.tick();
    if (i == facts.size()) {
      if (!all_witnessed(s, labeled)) return true;
      verdict = {true, s.labeling(labeled)};
      return false;
    }
    for (const auto& option : options[i]) {
      for (const auto& g : option) labeled.insert(g);
      bool go_on = true;
      if (backward_holds(s, labeled, s.frontier_sets) && egds_hold(s.egds, labeled) && coverable(i + 1))
        go_on = self(self, i + 1);
      for (const auto& g : option) labeled.erase(g);
      if (!go_on) return false;
    }
    return true;
  };
  go(go, 0);
  return verdict;
}

InferenceVerdict check_inference_solution(const Instance& source, const mapping::MappingProgram& program,
                                          const Instance& target) {
  require_tgds(program);
  const Setting s = make_setting(source, program, View::Plain, domain_with(target, program));
  const InferenceGuard guard(s);
  const auto allowed = images_within(s, [&](const Fact& f) { return target.contains(f); });
  NodeBudget budget(DomainBudget{}.max_nodes);
  InferenceVerdict verdict;
  subset_search(s, allowed, target.size(), budget, guard, [&](const SearchState& state) {
    if (state.current != target) return true;
    verdict = {true, state.dep_current};
    return false;
  });
  return verdict;
}

std::set<Instance> enumerate_abd_solutions(const Instance& source, const mapping::MappingProgram& input,
                                           const DomainBudget& budget, const std::set<Term>& more) {
  const auto program = annotated(input);
  const Setting s = make_setting(source, program, View::Labeled, bounded_domain(source, program, more, budget));
  NodeBudget nodes(budget.max_nodes);
  std::set<Instance> labeled_sets;
  subset_search(s, all_images(s), budget.max_instance_size, nodes, AbdGuard{s}, [&](const SearchState& state) {
    labeled_sets.insert(state.current);
    return true;
  });
  const std::vector<Instance> candidates(labeled_sets.begin(), labeled_sets.end());
  const auto verdicts = check_candidates(candidates, [&](const Instance& c) { return all_witnessed(s, c); });
  std::set<Instance> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (verdicts[i]) out.insert(s.project(candidates[i]));
  return out;
}

std::set<Instance> enumerate_inference_solutions(const Instance& source, const mapping::MappingProgram& program,
                                                 const DomainBudget& budget, const std::set<Term>& more) {
  require_tgds(program);
  const Setting s = make_setting(source, program, View::Plain, bounded_domain(source, program, more, budget));
  const InferenceGuard guard(s);
  NodeBudget nodes(budget.max_nodes);
  std::set<Instance> out;
  subset_search(s, all_images(s), budget.max_instance_size, nodes, guard, [&](const SearchState& state) {
    out.insert(state.current);
    return true;
  });
  return out;
}

std::set<Instance> enumerate_owa_solutions(const Instance& source, const mapping::MappingProgram& program,
                                           const DomainBudget& budget, const std::set<Term>& more) {
  const Setting s = make_setting(source, program, View::Plain, bounded_domain(source, program, more, budget));
  NodeBudget nodes(budget.max_nodes);
  std::set<Instance> out;
  subset_search(
      s, all_images(s), budget.max_instance_size, nodes,
      [&](const SearchState& state) { return egds_hold(s.egds, state.current); },
      [&](const SearchState& state) {
        out.insert(state.current);
        return true;
      });
  return out;
}

std::set<Instance> minimal_solutions(const Instance& source, const mapping::MappingProgram& program,
                                     const DomainBudget& budget, const std::set<Term>& more) {
  const Setting s = make_setting(source, program, View::Plain, bounded_domain(source, program, more, budget));
  NodeBudget nodes(budget.max_nodes);
  std::set<Instance> models;
  selection_search(
      s, all_images(s), nodes, [&](const SearchState& state) { return egds_hold(s.egds, state.current); },
      [&](const SearchState& state) {
        models.insert(state.current);
        return true;
      });
  std::set<Instance> out;
  for (const auto& m : models) {
    const bool minimal = std::none_of(models.begin(), models.end(), [&](const Instance& other) {
      return other.size() < m.size() &&
             std::includes(m.begin(), m.end(), other.begin(), other.end());
    });
    if (minimal) out.insert(m);
  }
  return out;
}

std::set<Instance> gcwa_star_solutions(const Instance& source, const mapping::MappingProgram& program,
                                       const DomainBudget& budget, const std::set<Term>& more) {
  const Setting s = make_setting(source, program, View::Plain, {});
  const auto minimal = minimal_solutions(source, program, budget, more);
  const std::vector<Instance> parts(minimal.begin(), minimal.end());
  if (parts.size() > 20) throw BudgetExceeded("more than 20 minimal solutions for GCWA* unions");
  std::set<Instance> out;
  for (unsigned long mask = 1; mask < (1ul << parts.size()); ++mask) {
    Instance u;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (mask & (1ul << i)) u.insert_all(parts[i]);
    if (egds_hold(s.egds, u)) out.insert(std::move(u));
  }
  return out;
}

std::set<Instance> enumerate_solutions(Semantics semantics, const Instance& source,
                                       const mapping::MappingProgram& program, const DomainBudget& budget,
                                       const std::set<Term>& more) {
  switch (semantics) {
    case Semantics::Abd: return enumerate_abd_solutions(source, program, budget, more);
    case Semantics::Inference: return enumerate_inference_solutions(source, program, budget, more);
    case Semantics::Owa: return enumerate_owa_solutions(source, program, budget, more);
    case Semantics::GcwaStar: return gcwa_star_solutions(source, program, budget, more);
  }
  return {};
}

namespace {

bool monotone(const query::Query& q) {
  if (q.mode != query::Mode::Existential) return false;
  return std::all_of(q.disjuncts.begin(), q.disjuncts.end(),
                     [](const query::Disjunct& d) { return d.negative.empty() && d.disequalities.empty(); });
}

std::set<SymbolId> negated_relations(const query::Query& q) {
  std::set<SymbolId> out;
  for (const auto& d : q.disjuncts)
    for (const auto& f : d.negative) out.insert(f.relation);
  return out;
}

// Solution space of one semantics: candidates are unions of trigger images accepted by
// `guard` at every node and by `accept` at the leaves.
struct Space {
  Setting s;
  std::function<bool(const SearchState&)> guard;
  std::function<bool(const Instance&)> accept;
};

// Filled in place: the callbacks point into `space.s`.
void build_space(Space& space, Semantics semantics, const Instance& source, const mapping::MappingProgram& program,
                 const std::vector<Term>& domain) {
  switch (semantics) {
    case Semantics::Abd: {
      space.s = make_setting(source, annotated(program), View::Labeled, domain);
      const Setting* s = &space.s;
      space.guard = [s](const SearchState& st) { return AbdGuard{*s}(st); };
      space.accept = [s](const Instance& labeled) { return all_witnessed(*s, labeled); };
      break;
    }
    case Semantics::Inference: {
      require_tgds(program);
      space.s = make_setting(source, program, View::Plain, domain);
      auto guard = std::make_shared<InferenceGuard>(space.s);
      space.guard = [guard](const SearchState& st) { return (*guard)(st); };
      space.accept = [](const Instance&) { return true; };
      break;
    }
    default: {
      space.s = make_setting(source, program, View::Plain, domain);
      const Setting* s = &space.s;
      space.guard = [s](const SearchState& st) { return egds_hold(s->egds, st.current); };
      space.accept = [](const Instance&) { return true; };
      break;
    }
  }
}

}  // namespace

OracleAnswer certain_oracle(Semantics semantics, const Instance& source, const mapping::MappingProgram& program,
                            const query::Query& q, const DomainBudget& budget) {
  OracleAnswer out;
  const std::set<Term> query_constants = q.constants();
  const auto domain_vec = bounded_domain(source, semantics == Semantics::Abd ? annotated(program) : program,
                                         query_constants, budget);
  const std::set<Term> domain(domain_vec.begin(), domain_vec.end());
  out.domain_size = domain.size();
  const auto tuples = query::candidate_tuples(domain, q.head.size());

  if (semantics == Semantics::GcwaStar) {
    const auto solutions = gcwa_star_solutions(source, program, budget, query_constants);
    out.solutions_examined = solutions.size();
    out.no_solutions = solutions.empty();
    if (out.no_solutions) return out;
    std::vector<query::Tuple> remaining(tuples.begin(), tuples.end());
    for (const auto& j : solutions) {
      std::erase_if(remaining, [&](const query::Tuple& t) { return !query::holds(j, q, t); });
      if (remaining.empty()) break;
    }
    out.answers.insert(remaining.begin(), remaining.end());
    return out;
  }

  // Does some solution falsify q(t)?  With t == nullptr: does any solution exist?
  // Extending a candidate only adds facts, so once q holds and every relation it negates is
  // decided, q holds in every completion and the subtree is pruned.
  NodeBudget nodes(budget.max_nodes);
  if (semantics == Semantics::Abd && monotone(q)) {
    // Minimal models of (I, Σ⋄) are solutions and every solution contains one, so a monotone
    // query fails in some solution iff it fails in some one-image-per-trigger model.
    const Setting s = make_setting(source, annotated(program), View::Labeled, domain_vec);
    const AbdGuard guard{s};
    auto counterexample = [&](const query::Tuple* t) {
      bool found = false;
      selection_search(
          s, all_images(s), nodes,
          [&](const SearchState& st) { return guard(st) && (!t || !query::holds(s.project(st.current), q, *t)); },
          [&](const SearchState&) { return !(found = true); });
      ++out.solutions_examined;
      return found;
    };
    if (!counterexample(nullptr)) {
      out.no_solutions = true;
      return out;
    }
    for (const auto& t : tuples)
      if (!counterexample(&t)) out.answers.insert(t);
    return out;
  }

  Space space;
  build_space(space, semantics, source, program, domain_vec);
  const Setting& s = space.s;
  const auto negated = negated_relations(q);
  auto counterexample = [&](const query::Tuple* t) {
    auto forced = [&](const SearchState& st) {
      if (!t || q.mode != query::Mode::Existential) return false;
      const auto& open = s.pending[st.depth];
      if (std::any_of(negated.begin(), negated.end(), [&](SymbolId r) { return open.count(r) != 0; })) return false;
      return query::holds(s.project(st.current), q, *t);
    };
    bool found = false;
    subset_search(
        s, all_images(s), budget.max_instance_size, nodes,
        [&](const SearchState& st) { return space.guard(st) && !forced(st); },
        [&](const SearchState& st) {
          ++out.solutions_examined;
          if (t && query::holds(s.project(st.current), q, *t)) return true;
          if (!space.accept(st.current)) return true;
          found = true;
          return false;
        });
    return found;
  };
  // Every solution contains a one-image-per-trigger model and the guards are downward closed,
  // so existence only needs selections.
  bool exists = false;
  selection_search(s, all_images(s), nodes, space.guard, [&](const SearchState& st) {
    exists = space.accept(st.current);
    return !exists;
  });
  if (!exists) {
    out.no_solutions = true;
    return out;
  }
  for (const auto& t : tuples)
    if (!counterexample(&t)) out.answers.insert(t);
  return out;
}

ExistenceVerdict exists_solution_general(const Instance& source, const mapping::MappingProgram& input,
                                         const DomainBudget& budget) {
  const auto program = annotated(input);
  if (mapping::annotation_density(program).overall <= 1) {
    const auto outcome = chase::annotated_chase(source, program);
    return {outcome.succeeded(), true, std::nullopt};
  }
  const Setting s = make_setting(source, program, View::Labeled, bounded_domain(source, program, {}, budget));
  NodeBudget nodes(budget.max_nodes);
  ExistenceVerdict verdict{false, false, std::nullopt};
  selection_search(s, all_images(s), nodes, AbdGuard{s}, [&](const SearchState& state) {
    verdict.exists = true;
    verdict.witness = s.project(minimize_model(s, state.current));
    return false;
  });
  // A found model is a genuine solution; only "no solution" depends on the domain bound.
  verdict.authoritative = verdict.exists;
  return verdict;
}

}  // namespace dx::oracle
