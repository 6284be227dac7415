#include "dx/chase/chase.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "dx/core/homomorphism.hpp"
#include "dx/mapping/analysis.hpp"

namespace dx::chase {

using mapping::Abd;
using mapping::Aegd;
using mapping::Atom;
using mapping::MappingProgram;

std::string phase_name(Phase phase) {
  switch (phase) {
    case Phase::Forward: return "forward";
    case Phase::Egd: return "egd";
    case Phase::Backward: return "backward";
  }
  return "?";
}

namespace {

std::vector<Fact> facts_of(const std::vector<Atom>& atoms) {
  std::vector<Fact> out;
  for (const auto& a : atoms) out.push_back(a.to_fact());
  return out;
}

using LabelIndex = std::map<std::pair<SymbolId, int>, std::vector<const Fact*>>;

LabelIndex index_labels(const TupleLabeling& labels) {
  LabelIndex index;
  for (const auto& [f, ls] : labels)
    for (int l : ls) index[{f.relation, l}].push_back(&f);
  return index;
}

const std::vector<const Fact*>& lookup(const LabelIndex& index, const Atom& atom) {
  static const std::vector<const Fact*> none;
  auto it = index.find({atom.relation, atom.annotation});
  return it == index.end() ? none : it->second;
}

void rebuild(LabeledTable& t, const Term& from, const Term& to) {
  TupleLabeling labels;
  for (const auto& [key, ls] : t.labels) {
    Fact f = key;
    for (auto& term : f.terms)
      if (term == from) term = to;
    labels[f].insert(ls.begin(), ls.end());
  }
  t.labels = std::move(labels);
  t.table = Instance();
  for (const auto& [f, _] : t.labels) t.table.insert(f);
}

std::string render_list(const std::vector<const Fact*>& facts) {
  std::string out;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (i) out += ", ";
    out += facts[i]->str();
  }
  return out;
}

}  // namespace

LabeledTable forward_chase(const Instance& source, const MappingProgram& program, const ChaseOptions& options) {
  struct Trigger {
    std::size_t abd;
    Homomorphism h;
  };
  std::vector<Trigger> triggers;
  for (std::size_t k = 0; k < program.abds.size(); ++k)
    for (auto& h : find_homomorphisms(facts_of(program.abds[k].body), source)) triggers.push_back({k, std::move(h)});
  if (options.shuffle_seed) std::shuffle(triggers.begin(), triggers.end(), std::mt19937_64(options.shuffle_seed));

  LabeledTable out;
  for (auto& [k, h] : triggers) {
    const Abd& abd = program.abds[k];
    for (const auto& z : abd.head_only) h[z] = Term::open_null(out.next_open++);
    for (const auto& a : abd.head) {
      Fact f = substitute(h, a.to_fact());
      out.table.insert(f);
      out.labels[f].insert(a.annotation);
    }
  }
  return out;
}

std::variant<LabeledTable, Failure> egd_chase(LabeledTable table, const std::vector<Aegd>& aegds,
                                              const ChaseOptions& options) {
  std::vector<std::size_t> order(aegds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (options.shuffle_seed) std::shuffle(order.begin(), order.end(), std::mt19937_64(options.shuffle_seed ^ 0x9e37u));

  auto free = [](const Term& t) { return t.is_variable(); };
  bool changed = true;
  while (changed) {
    changed = false;
    const auto index = index_labels(table.labels);
    for (std::size_t k : order) {
      const Aegd& aegd = aegds[k];
      const auto pattern = facts_of(aegd.body);
      auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& { return lookup(index, aegd.body[i]); };
      Binding binding;
      std::vector<const Fact*> chosen;
      std::optional<std::pair<Term, Term>> violation;
      std::string witness;
      for_each_match(pattern, candidates, free, binding, chosen, [&](const Binding& b, const auto& used) {
        Term l = b.resolve(aegd.left), r = b.resolve(aegd.right);
        if (l == r) return true;
        violation = {l, r};
        witness = render_list(used);
        return false;
      });
      if (!violation) continue;
      auto [l, r] = *violation;
      if (l.is_constant() && r.is_constant())
        return Failure{Phase::Egd, "aegd #" + std::to_string(k + 1) + " equates " + l.str() + " and " + r.str() +
                                       " on " + witness};
      if (l.is_constant() || r.is_constant()) {
        const Term null = l.is_constant() ? r : l;
        const Term constant = l.is_constant() ? l : r;
        rebuild(table, null, constant);
      } else {
        const Term fresh = Term::closed_null(table.next_closed++);
        rebuild(table, l, fresh);
        rebuild(table, r, fresh);
      }
      changed = true;
      break;
    }
  }
  return table;
}

std::variant<GlobalCondition, Failure> backward_chase(const LabeledTable& table, const Instance& source,
                                                      const MappingProgram& program) {
  const auto index = index_labels(table.labels);
  GlobalCondition condition;
  for (std::size_t k = 0; k < program.abds.size(); ++k) {
    const Abd& abd = program.abds[k];
    const std::size_t m = abd.head.size();
    std::vector<const std::vector<const Fact*>*> lists;
    for (const auto& a : abd.head) lists.push_back(&lookup(index, a));
    if (std::any_of(lists.begin(), lists.end(), [](auto* l) { return l->empty(); })) continue;

    const auto vars = mapping::variables_of(abd.head);
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      // Per-atom homomorphisms h_i.
      std::vector<std::map<Term, Term>> homs(m);
      std::vector<const Fact*> used(m);
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        const Fact* f = (*lists[i])[pick[i]];
        used[i] = f;
        const Atom& a = abd.head[i];
        for (std::size_t p = 0; p < a.terms.size() && ok; ++p) {
          const Term& s = a.terms[p];
          const Term& v = f->terms[p];
          if (s.is_constant()) {
            ok = s == v;
          } else {
            auto [it, fresh] = homs[i].emplace(s, v);
            ok = fresh || it->second == v;
          }
        }
      }
      // Compatibility: no variable receives two different constants.
      std::map<Term, Term> joined;
      for (const auto& x : vars) {
        if (!ok) break;
        std::optional<Term> common, constant;
        bool all_equal = true;
        for (std::size_t i = 0; i < m; ++i) {
          auto it = homs[i].find(x);
          if (it == homs[i].end()) continue;
          if (!common) common = it->second;
          else if (*common != it->second) all_equal = false;
          if (it->second.is_constant()) {
            if (constant && *constant != it->second) ok = false;
            constant = it->second;
          }
        }
        joined[x] = all_equal ? *common : constant ? *constant : *common;
      }
      if (ok) {
        std::vector<Fact> implied;
        for (const auto& a : abd.body) {
          Fact f = a.to_fact();
          for (auto& t : f.terms)
            if (auto it = joined.find(t); it != joined.end()) t = it->second;
          implied.push_back(std::move(f));
        }
        if (!has_homomorphism(implied, source)) {
          Clause clause;
          for (const auto& x : vars) {
            std::vector<Term> images;
            for (std::size_t i = 0; i < m; ++i)
              if (auto it = homs[i].find(x); it != homs[i].end()) images.push_back(it->second);
            for (std::size_t i = 0; i < images.size(); ++i)
              for (std::size_t j = i + 1; j < images.size(); ++j)
                if (images[i] != images[j]) clause.push_back(Disequality::make(images[i], images[j]));
          }
          if (clause.empty()) {
            std::string implied_text;
            for (std::size_t i = 0; i < implied.size(); ++i) implied_text += (i ? ", " : "") + implied[i].str();
            return Failure{Phase::Backward, "abd #" + std::to_string(k + 1) + ": " + render_list(used) +
                                                " requires " + implied_text + " in the source"};
          }
          condition.add(std::move(clause));
        }
      }
      std::size_t i = 0;
      while (i < m && ++pick[i] == lists[i]->size()) pick[i++] = 0;
      if (i == m) break;
    }
  }
  return condition;
}

ChaseOutcome annotated_chase(const Instance& source, const MappingProgram& program, const ChaseOptions& options) {
  ChaseOutcome outcome{Failure{}, {}};
  const int density = mapping::annotation_density(program).overall;
  if (density > 1)
    outcome.warnings.push_back("annotation density " + std::to_string(density) +
                               " > 1: the representative is heuristic");
  if (!mapping::check_safety(program).safe) outcome.warnings.push_back("program contains unsafe aegds");

  auto forward = forward_chase(source, program, options);
  auto equated = egd_chase(std::move(forward), program.aegds, options);
  if (auto* failure = std::get_if<Failure>(&equated)) {
    outcome.result = *failure;
    return outcome;
  }
  auto& table = std::get<LabeledTable>(equated);
  auto backward = backward_chase(table, source, program);
  if (auto* failure = std::get_if<Failure>(&backward)) {
    outcome.result = *failure;
    return outcome;
  }
  outcome.result = Representative{std::move(table.table), std::get<GlobalCondition>(std::move(backward)),
                                  std::move(table.labels), density > 1};
  return outcome;
}

std::variant<Instance, Failure> owa_chase(const Instance& source, const MappingProgram& program) {
  std::vector<mapping::Tgd> tgds = program.tgds;
  std::vector<mapping::Egd> egds = program.egds;
  if (program.annotated()) {
    tgds = mapping::derive_views(program).forward;
    for (const auto& e : program.aegds) {
      mapping::Egd egd{e.body, e.left, e.right};
      for (auto& a : egd.body) a.annotation = 0;
      egds.push_back(std::move(egd));
    }
  }
  Instance table;
  std::uint32_t next = 1;
  for (const auto& tgd : tgds) {
    for (auto h : find_homomorphisms(facts_of(tgd.body), source)) {
      for (const auto& z : tgd.existentials) h[z] = Term::closed_null(next++);
      for (const auto& a : tgd.head) table.insert(substitute(h, a.to_fact()));
    }
  }
  auto free = [](const Term& t) { return t.is_variable(); };
  bool changed = true;
  while (changed) {
    changed = false;
    RelationIndex index(table);
    for (const auto& egd : egds) {
      const auto pattern = facts_of(egd.body);
      auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& {
        return index.facts(pattern[i].relation);
      };
      Binding binding;
      std::vector<const Fact*> chosen;
      std::optional<std::pair<Term, Term>> violation;
      for_each_match(pattern, candidates, free, binding, chosen, [&](const Binding& b, const auto&) {
        Term l = b.resolve(egd.left), r = b.resolve(egd.right);
        if (l == r) return true;
        violation = {l, r};
        return false;
      });
      if (!violation) continue;
      auto [l, r] = *violation;
      if (l.is_constant() && r.is_constant())
        return Failure{Phase::Egd, "egd equates " + l.str() + " and " + r.str()};
      Term from = l, to = r;
      if (l.is_constant() || (r.is_null() && l < r)) std::swap(from, to);
      Instance next_table;
      for (auto f : table) {
        for (auto& t : f.terms)
          if (t == from) t = to;
        next_table.insert(f);
      }
      table = std::move(next_table);
      changed = true;
      break;
    }
  }
  return table;
}

}  // namespace dx::chase
