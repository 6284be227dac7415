#include "dx/mapping/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace dx::mapping {

std::string Atom::str() const {
  std::string out = relation_name();
  if (annotation) out += "@" + std::to_string(annotation);
  out += "(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += terms[i].is_constant() ? "\"" + terms[i].name() + "\"" : terms[i].str();
  }
  return out + ")";
}

std::string render_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += atoms[i].str();
  }
  return out;
}

std::vector<Term> variables_of(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const auto& a : atoms)
    for (const auto& t : a.terms)
      if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

namespace {

bool contains(const std::vector<Term>& v, const Term& t) { return std::find(v.begin(), v.end(), t) != v.end(); }

}  // namespace

void compute_roles(Abd& abd) {
  const auto body_vars = variables_of(abd.body);
  const auto head_vars = variables_of(abd.head);
  abd.shared.clear();
  abd.body_only.clear();
  abd.head_only.clear();
  for (const auto& v : body_vars) (contains(head_vars, v) ? abd.shared : abd.body_only).push_back(v);
  for (const auto& v : head_vars)
    if (!contains(body_vars, v)) abd.head_only.push_back(v);
}

void compute_roles(Tgd& tgd) {
  const auto body_vars = variables_of(tgd.body);
  const auto head_vars = variables_of(tgd.head);
  tgd.frontier.clear();
  tgd.existentials.clear();
  for (const auto& v : body_vars)
    if (contains(head_vars, v)) tgd.frontier.push_back(v);
  for (const auto& v : head_vars)
    if (!contains(body_vars, v)) tgd.existentials.push_back(v);
}

Abd make_abd(std::vector<Atom> body, std::vector<Atom> head) {
  Abd abd{std::move(body), std::move(head), {}, {}, {}};
  compute_roles(abd);
  return abd;
}

Tgd make_tgd(std::vector<Atom> body, std::vector<Atom> head) {
  Tgd tgd{std::move(body), std::move(head), {}, {}};
  compute_roles(tgd);
  return tgd;
}

std::set<int> MappingProgram::annotations(SymbolId relation) const {
  std::set<int> out;
  for (const auto& abd : abds)
    for (const auto& a : abd.head)
      if (a.relation == relation) out.insert(a.annotation);
  return out;
}

std::set<Term> MappingProgram::constants() const {
  std::set<Term> out;
  auto scan = [&](const std::vector<Atom>& atoms) {
    for (const auto& a : atoms)
      for (const auto& t : a.terms)
        if (t.is_constant()) out.insert(t);
  };
  for (const auto& d : abds) scan(d.body), scan(d.head);
  for (const auto& d : aegds) scan(d.body);
  for (const auto& d : tgds) scan(d.body), scan(d.head);
  for (const auto& d : egds) scan(d.body);
  return out;
}

namespace {

void record(Schema& schema, const Atom& atom) {
  auto [it, fresh] = schema.emplace(atom.relation_name(), atom.terms.size());
  if (!fresh && it->second != atom.terms.size())
    throw std::invalid_argument("arity conflict for relation " + atom.relation_name());
}

void require_annotation(const Atom& atom, bool wanted, const char* where) {
  if (wanted && atom.annotation == 0)
    throw std::invalid_argument(std::string("missing annotation on ") + where + " atom " + atom.str());
  if (!wanted && atom.annotation != 0)
    throw std::invalid_argument(std::string("annotation not allowed on ") + where + " atom " + atom.str());
}

}  // namespace

void infer_schemas(MappingProgram& program) {
  const bool annotated = program.annotated();
  if (annotated && (!program.tgds.empty() || !program.egds.empty()))
    throw std::invalid_argument("mixed program: abds/aegds cannot be combined with tgds/egds");
  Schema source, target;
  for (const auto& abd : program.abds) {
    if (abd.body.empty() || abd.head.empty()) throw std::invalid_argument("abd needs a nonempty body and head");
    for (const auto& a : abd.body) require_annotation(a, false, "source"), record(source, a);
    for (const auto& a : abd.head) require_annotation(a, true, "abd head"), record(target, a);
  }
  for (const auto& tgd : program.tgds) {
    if (tgd.body.empty() || tgd.head.empty()) throw std::invalid_argument("tgd needs a nonempty body and head");
    for (const auto& a : tgd.body) require_annotation(a, false, "source"), record(source, a);
    for (const auto& a : tgd.head) require_annotation(a, false, "tgd head"), record(target, a);
  }
  auto check_eq = [](const std::vector<Atom>& body, const Term& l, const Term& r) {
    const auto vars = variables_of(body);
    for (const auto& t : {l, r})
      if (!t.is_variable() || std::find(vars.begin(), vars.end(), t) == vars.end())
        throw std::invalid_argument("equality variable " + t.str() + " does not occur in the body");
  };
  for (const auto& e : program.aegds) {
    for (const auto& a : e.body) require_annotation(a, true, "aegd"), record(target, a);
    check_eq(e.body, e.left, e.right);
  }
  for (const auto& e : program.egds) {
    for (const auto& a : e.body) require_annotation(a, false, "egd"), record(target, a);
    check_eq(e.body, e.left, e.right);
  }
  for (const auto& [rel, _] : source)
    if (target.count(rel)) throw std::invalid_argument("relation " + rel + " used in both source and target schema");
  program.source = std::move(source);
  program.target = std::move(target);
}

}  // namespace dx::mapping
