#include "dx/mapping/parser.hpp"

#include <stdexcept>

#include "dx/core/lexer.hpp"

namespace dx::mapping {
namespace {

Atom parse_atom(TokenStream& in) {
  Atom atom;
  atom.relation = intern(in.expect(Tok::Ident, "relation name").text);
  if (in.accept(Tok::At)) {
    const Token& n = in.expect(Tok::Ident, "annotation");
    if (!is_integer(n.text) || std::stoi(n.text) <= 0) in.fail("annotation must be a positive integer");
    atom.annotation = std::stoi(n.text);
  }
  in.expect(Tok::LParen, "'('");
  if (!in.at(Tok::RParen)) {
    do {
      const Token& t = in.next();
      if (t.kind == Tok::Ident) {
        atom.terms.push_back(Term::variable(t.text));
      } else if (t.kind == Tok::Quoted) {
        atom.terms.push_back(Term::constant(t.text));
      } else {
        throw ParseError(t.line, t.column, "expected a variable or quoted constant");
      }
    } while (in.accept(Tok::Comma));
  }
  in.expect(Tok::RParen, "')'");
  return atom;
}

std::vector<Atom> parse_atoms(TokenStream& in) {
  std::vector<Atom> atoms{parse_atom(in)};
  while (in.accept(Tok::Comma)) atoms.push_back(parse_atom(in));
  return atoms;
}

std::pair<Term, Term> parse_equality(TokenStream& in) {
  Term l = Term::variable(in.expect(Tok::Ident, "variable").text);
  in.expect(Tok::Eq, "'='");
  Term r = Term::variable(in.expect(Tok::Ident, "variable").text);
  return {l, r};
}

}  // namespace

MappingProgram parse_mapping(std::string_view text) {
  TokenStream in(tokenize(text));
  MappingProgram program;
  while (!in.at(Tok::End)) {
    const Token kw = in.expect(Tok::Ident, "statement keyword");
    in.expect(Tok::Colon, "':' after keyword");
    if (kw.text == "abd") {
      auto body = parse_atoms(in);
      in.expect(Tok::BiArrow, "'<->'");
      auto head = parse_atoms(in);
      program.abds.push_back(make_abd(std::move(body), std::move(head)));
    } else if (kw.text == "tgd") {
      auto body = parse_atoms(in);
      in.expect(Tok::Arrow, "'->'");
      auto head = parse_atoms(in);
      program.tgds.push_back(make_tgd(std::move(body), std::move(head)));
    } else if (kw.text == "aegd" || kw.text == "egd") {
      auto body = parse_atoms(in);
      in.expect(Tok::Arrow, "'->'");
      auto [l, r] = parse_equality(in);
      if (kw.text == "aegd")
        program.aegds.push_back({std::move(body), l, r});
      else
        program.egds.push_back({std::move(body), l, r});
    } else {
      throw ParseError(kw.line, kw.column, "unknown statement kind '" + kw.text + "'");
    }
    in.expect(Tok::Dot, "'.' at end of statement");
    try {
      infer_schemas(program);
    } catch (const std::invalid_argument& e) {
      throw ParseError(kw.line, kw.column, e.what());
    }
  }
  return program;
}

std::string serialize_mapping(const MappingProgram& program) {
  std::string out;
  for (const auto& d : program.abds) out += "abd: " + render_atoms(d.body) + " <-> " + render_atoms(d.head) + ".\n";
  for (const auto& d : program.aegds)
    out += "aegd: " + render_atoms(d.body) + " -> " + d.left.str() + " = " + d.right.str() + ".\n";
  for (const auto& d : program.tgds) out += "tgd: " + render_atoms(d.body) + " -> " + render_atoms(d.head) + ".\n";
  for (const auto& d : program.egds)
    out += "egd: " + render_atoms(d.body) + " -> " + d.left.str() + " = " + d.right.str() + ".\n";
  return out;
}

}  // namespace dx::mapping
