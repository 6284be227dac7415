#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dx/core/instance.hpp"

namespace dx::mapping {

// Atom over variables and constants; annotation 0 means "not annotated".
struct Atom {
  SymbolId relation = 0;
  int annotation = 0;
  std::vector<Term> terms;

  Fact to_fact() const { return Fact(relation, terms); }
  const std::string& relation_name() const { return symbol_name(relation); }
  std::string str() const;
  auto operator<=>(const Atom&) const = default;
};

struct Abd {
  std::vector<Atom> body;  // source atoms
  std::vector<Atom> head;  // annotated target atoms
  std::vector<Term> shared;     // x̄: in body and head
  std::vector<Term> body_only;  // ȳ
  std::vector<Term> head_only;  // z̄
  bool operator==(const Abd&) const = default;
};

struct Aegd {
  std::vector<Atom> body;
  Term left;
  Term right;
  bool operator==(const Aegd&) const = default;
};

struct Tgd {
  std::vector<Atom> body;
  std::vector<Atom> head;
  std::vector<Term> frontier;     // body variables used in the head
  std::vector<Term> existentials;  // head-only variables
  bool operator==(const Tgd&) const = default;
};

struct Egd {
  std::vector<Atom> body;
  Term left;
  Term right;
  bool operator==(const Egd&) const = default;
};

struct MappingProgram {
  Schema source;
  Schema target;
  std::vector<Abd> abds;
  std::vector<Aegd> aegds;
  std::vector<Tgd> tgds;
  std::vector<Egd> egds;

  bool annotated() const { return !abds.empty() || !aegds.empty(); }
  // annot(Σ↔_abd, R)
  std::set<int> annotations(SymbolId relation) const;
  std::set<Term> constants() const;
  bool operator==(const MappingProgram&) const = default;
};

// Variables of a conjunction in order of first occurrence.
std::vector<Term> variables_of(const std::vector<Atom>& atoms);

// Fills the variable-role vectors from occurrence.
void compute_roles(Abd& abd);
void compute_roles(Tgd& tgd);

Abd make_abd(std::vector<Atom> body, std::vector<Atom> head);
Tgd make_tgd(std::vector<Atom> body, std::vector<Atom> head);

// Recomputes source/target schemas and validates the program invariants.
// Throws std::invalid_argument describing the first violation.
void infer_schemas(MappingProgram& program);

std::string render_atoms(const std::vector<Atom>& atoms);

}  // namespace dx::mapping
