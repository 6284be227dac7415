#include "dx/mapping/analysis.hpp"

#include <algorithm>

#include "dx/core/table.hpp"

namespace dx::mapping {

RelationMetric annotation_density(const MappingProgram& program) {
  std::map<std::pair<SymbolId, int>, int> count;
  for (const auto& abd : program.abds)
    for (const auto& a : abd.head) ++count[{a.relation, a.annotation}];
  RelationMetric out;
  for (const auto& [key, n] : count) {
    auto& slot = out.per_relation[symbol_name(key.first)];
    slot = std::max(slot, n);
    out.overall = std::max(out.overall, n);
  }
  return out;
}

RelationMetric annotation_cardinality(const MappingProgram& program) {
  std::map<SymbolId, std::set<int>> labels;
  for (const auto& abd : program.abds)
    for (const auto& a : abd.head) labels[a.relation].insert(a.annotation);
  RelationMetric out;
  for (const auto& [rel, ls] : labels) {
    const int n = static_cast<int>(ls.size());
    out.per_relation[symbol_name(rel)] = n;
    out.overall = std::max(out.overall, n);
  }
  return out;
}

std::set<AnnotatedPosition> affected_positions(const MappingProgram& program) {
  std::set<AnnotatedPosition> out;
  for (const auto& abd : program.abds)
    for (const auto& a : abd.head)
      for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (std::find(abd.head_only.begin(), abd.head_only.end(), a.terms[i]) != abd.head_only.end())
          out.insert({a.relation_name(), a.annotation, static_cast<int>(i + 1)});
  return out;
}

namespace {

// Positions (as annotated positions) where each variable of a conjunction occurs.
std::map<Term, std::vector<AnnotatedPosition>> occurrences(const std::vector<Atom>& body) {
  std::map<Term, std::vector<AnnotatedPosition>> out;
  for (const auto& a : body)
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].is_variable())
        out[a.terms[i]].push_back({a.relation_name(), a.annotation, static_cast<int>(i + 1)});
  return out;
}

}  // namespace

SafetyReport check_safety(const MappingProgram& program) {
  const auto aff = affected_positions(program);
  SafetyReport report;
  for (std::size_t k = 0; k < program.aegds.size(); ++k) {
    bool safe = true;
    for (const auto& [var, positions] : occurrences(program.aegds[k].body)) {
      if (positions.size() < 2) continue;
      for (const auto& p : positions) safe = safe && !aff.count(p);
    }
    if (!safe) {
      report.safe = false;
      report.offending.push_back(k);
    }
  }
  return report;
}

bool equates_affected_variables(const MappingProgram& program) {
  const auto aff = affected_positions(program);
  for (const auto& e : program.aegds) {
    auto occ = occurrences(e.body);
    auto touches = [&](const Term& v) {
      const auto& ps = occ[v];
      return std::any_of(ps.begin(), ps.end(), [&](const AnnotatedPosition& p) { return aff.count(p) != 0; });
    };
    if (touches(e.left) && touches(e.right)) return true;
  }
  return false;
}

std::vector<Tgd> normalize_tgds(const std::vector<Tgd>& tgds) {
  std::vector<Tgd> out;
  for (const auto& tgd : tgds) {
    std::vector<Atom> head;
    for (const auto& a : tgd.head)
      if (std::find(head.begin(), head.end(), a) == head.end()) head.push_back(a);
    out.push_back(make_tgd(tgd.body, std::move(head)));
  }
  return out;
}

bool is_gav_reducible(const std::vector<Tgd>& tgds) {
  for (const auto& tgd : normalize_tgds(tgds)) {
    for (const auto& z : tgd.existentials) {
      auto n = std::count_if(tgd.head.begin(), tgd.head.end(), [&](const Atom& a) {
        return std::find(a.terms.begin(), a.terms.end(), z) != a.terms.end();
      });
      if (n != 1) return false;
    }
  }
  return true;
}

bool all_full(const std::vector<Tgd>& tgds) {
  return std::all_of(tgds.begin(), tgds.end(), [](const Tgd& t) { return t.existentials.empty(); });
}

Translation translate_tgds(const MappingProgram& program) {
  Translation out;
  std::map<SymbolId, int> counter;
  for (const auto& tgd : program.tgds) {
    std::vector<Fact> head;
    for (const auto& a : tgd.head) head.push_back(a.to_fact());
    const auto& ex = tgd.existentials;
    auto blocks = gaifman_blocks(head, [&](const Term& t) { return std::find(ex.begin(), ex.end(), t) != ex.end(); });
    for (const auto& block : blocks) {
      std::vector<Atom> annotated;
      for (const auto& f : block) annotated.push_back({f.relation, ++counter[f.relation], f.terms});
      out.program.abds.push_back(make_abd(tgd.body, std::move(annotated)));
    }
  }
  for (const auto& egd : program.egds) {
    std::vector<std::vector<int>> choices;
    bool reflected = true;
    for (const auto& a : egd.body) {
      auto labels = out.program.annotations(a.relation);
      if (labels.empty()) reflected = false;
      choices.emplace_back(labels.begin(), labels.end());
    }
    if (!reflected) {
      out.warnings.push_back("egd over relations absent from every tgd head dropped: " + render_atoms(egd.body) +
                             " -> " + egd.left.str() + " = " + egd.right.str());
      continue;
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      Aegd aegd{egd.body, egd.left, egd.right};
      for (std::size_t i = 0; i < pick.size(); ++i) aegd.body[i].annotation = choices[i][pick[i]];
      out.program.aegds.push_back(std::move(aegd));
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  infer_schemas(out.program);
  auto safety = check_safety(out.program);
  if (!safety.safe) {
    const auto& bad = out.program.aegds[safety.offending.front()];
    throw UnsafeEgdError("unsafe egd after translation: " + render_atoms(bad.body) + " -> " + bad.left.str() +
                         " = " + bad.right.str());
  }
  return out;
}

SymbolId diamond_relation(SymbolId relation, int annotation) {
  return intern(symbol_name(relation) + "_" + std::to_string(annotation));
}

Views derive_views(const MappingProgram& program) {
  Views views;
  auto strip = [](std::vector<Atom> atoms) {
    for (auto& a : atoms) a.annotation = 0;
    return atoms;
  };
  auto diamond = [](std::vector<Atom> atoms) {
    for (auto& a : atoms) {
      a.relation = diamond_relation(a.relation, a.annotation);
      a.annotation = 0;
    }
    return atoms;
  };
  for (const auto& abd : program.abds) {
    views.forward.push_back(make_tgd(abd.body, strip(abd.head)));
    views.backward.push_back({abd.head, abd.body, abd.body_only});
    Abd d = make_abd(abd.body, diamond(abd.head));
    views.diamond.abds.push_back(std::move(d));
  }
  for (const auto& e : program.aegds) views.diamond.aegds.push_back({diamond(e.body), e.left, e.right});
  for (const auto& abd : views.diamond.abds) {
    for (const auto& a : abd.body) views.diamond.source.emplace(a.relation_name(), a.terms.size());
    for (const auto& a : abd.head) views.diamond.target.emplace(a.relation_name(), a.terms.size());
  }
  for (const auto& e : views.diamond.aegds)
    for (const auto& a : e.body) views.diamond.target.emplace(a.relation_name(), a.terms.size());
  return views;
}

}  // namespace dx::mapping
