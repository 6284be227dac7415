#include "dx/core/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dx/core/lexer.hpp"

namespace dx {
namespace {

Term parse_ground_term(TokenStream& in) {
  const Token& t = in.peek();
  if (t.kind == Tok::Ident || t.kind == Tok::Quoted) {
    in.next();
    return Term::constant(t.text);
  }
  if (t.kind == Tok::Null) {
    in.next();
    const auto id = static_cast<std::uint32_t>(std::stoul(t.text.substr(2)));
    if (id == 0) in.fail("null ids start at 1");
    return t.text[1] == 'o' ? Term::open_null(id) : Term::closed_null(id);
  }
  in.fail("expected a constant or null");
}

Fact parse_ground_fact(TokenStream& in) {
  const Token& name = in.expect(Tok::Ident, "relation name");
  Fact f(name.text, {});
  in.expect(Tok::LParen, "'('");
  if (!in.at(Tok::RParen)) {
    do {
      f.terms.push_back(parse_ground_term(in));
    } while (in.accept(Tok::Comma));
  }
  in.expect(Tok::RParen, "')'");
  return f;
}

template <class PerLine>
void for_each_line(std::string_view text, PerLine&& per_line) {
  std::size_t start = 0, line_no = 1;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    auto tokens = tokenize(line);
    for (auto& t : tokens) t.line = line_no;
    if (tokens.size() > 1) {
      TokenStream in(std::move(tokens));
      per_line(in);
    }
    start = end + 1;
    ++line_no;
  }
}

}  // namespace

Instance parse_facts(std::string_view text) {
  TokenStream in(tokenize(text));
  Instance out;
  while (!in.at(Tok::End)) {
    const Token& start = in.peek();
    Fact f = parse_ground_fact(in);
    in.expect(Tok::Dot, "'.' after fact");
    try {
      out.insert(f);
    } catch (const std::invalid_argument& e) {
      throw ParseError(start.line, start.column, e.what());
    }
  }
  return out;
}

std::string render_constant(const Term& t) {
  if (t.is_constant() && !is_plain_identifier(t.name())) return "\"" + t.name() + "\"";
  return t.str();
}

std::string render_fact(const Fact& f) {
  std::string out = f.relation_name() + "(";
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i) out += ", ";
    out += render_constant(f.terms[i]);
  }
  return out + ")";
}

std::string render_facts(const Instance& instance) {
  std::string out;
  for (const auto& f : instance.sorted_for_output()) out += render_fact(f) + ".\n";
  return out;
}

GlobalCondition parse_condition(std::string_view text) {
  GlobalCondition out;
  for_each_line(text, [&](TokenStream& in) {
    Clause clause;
    do {
      Term a = parse_ground_term(in);
      in.expect(Tok::Neq, "'!='");
      Term b = parse_ground_term(in);
      clause.push_back(Disequality::make(a, b));
    } while (in.accept(Tok::Bar));
    if (!in.at(Tok::End)) in.fail("unexpected token in clause");
    out.add(clause);
  });
  return out;
}

std::string render_condition(const GlobalCondition& condition) {
  std::string out;
  for (const auto& clause : condition.clauses()) {
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (i) out += " | ";
      out += render_constant(clause[i].left) + " != " + render_constant(clause[i].right);
    }
    out += "\n";
  }
  return out;
}

TupleLabeling parse_labels(std::string_view text) {
  TupleLabeling out;
  for_each_line(text, [&](TokenStream& in) {
    Fact f = parse_ground_fact(in);
    in.expect(Tok::Arrow, "'->'");
    in.expect(Tok::LBrace, "'{'");
    std::set<int> labels;
    do {
      const Token& t = in.expect(Tok::Ident, "label");
      if (!is_integer(t.text)) in.fail("labels are integers");
      labels.insert(std::stoi(t.text));
    } while (in.accept(Tok::Comma));
    in.expect(Tok::RBrace, "'}'");
    out[f].insert(labels.begin(), labels.end());
  });
  return out;
}

std::string render_labels(const TupleLabeling& labels) {
  Instance keys;
  for (const auto& [f, _] : labels) keys.insert(f);
  std::string out;
  for (const auto& f : keys.sorted_for_output()) {
    out += render_fact(f) + " -> {";
    bool first = true;
    for (int l : labels.at(f)) {
      if (!first) out += ",";
      out += std::to_string(l);
      first = false;
    }
    out += "}\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace dx
