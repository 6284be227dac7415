#include "dx/query/query.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dx/core/condition.hpp"
#include "dx/core/io.hpp"
#include "dx/core/lexer.hpp"

namespace dx::query {

using Kind = Formula::Kind;

Formula Formula::truth(bool value) {
  Formula f;
  f.kind = value ? Kind::True : Kind::False;
  return f;
}

Formula Formula::make_atom(Fact atom) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(atom);
  return f;
}

Formula Formula::equal(Term l, Term r) {
  Formula f;
  f.kind = Kind::Eq;
  f.left = l;
  f.right = r;
  return f;
}

Formula Formula::not_equal(Term l, Term r) {
  Formula f = equal(l, r);
  f.kind = Kind::Neq;
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(g));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  if (parts.empty()) return truth(true);
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(parts);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  if (parts.empty()) return truth(false);
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

Formula Formula::implies(Formula premise, Formula conclusion) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(premise));
  f.children.push_back(std::move(conclusion));
  return f;
}

Formula Formula::quantified(Kind kind, std::vector<Term> vars, Formula body) {
  if (vars.empty()) return body;
  Formula f;
  f.kind = kind;
  f.bound = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

bool Formula::quantifier_free() const {
  if (kind == Kind::Exists || kind == Kind::Forall) return false;
  return std::all_of(children.begin(), children.end(), [](const Formula& c) { return c.quantifier_free(); });
}

std::set<Term> Formula::free_variables() const {
  std::set<Term> out;
  switch (kind) {
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Atom:
      for (const auto& t : atom.terms)
        if (t.is_variable()) out.insert(t);
      break;
    case Kind::Eq:
    case Kind::Neq:
      if (left.is_variable()) out.insert(left);
      if (right.is_variable()) out.insert(right);
      break;
    default:
      for (const auto& c : children) {
        auto sub = c.free_variables();
        out.insert(sub.begin(), sub.end());
      }
      if (kind == Kind::Exists || kind == Kind::Forall)
        for (const auto& v : bound) out.erase(v);
  }
  return out;
}

std::set<Term> Formula::constants() const {
  std::set<Term> out;
  for (const auto& t : atom.terms)
    if (t.is_constant()) out.insert(t);
  if (kind == Kind::Eq || kind == Kind::Neq) {
    if (left.is_constant()) out.insert(left);
    if (right.is_constant()) out.insert(right);
  }
  for (const auto& c : children) {
    auto sub = c.constants();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::size_t Formula::quantified_variable_count() const {
  std::size_t n = bound.size();
  for (const auto& c : children) n += c.quantified_variable_count();
  return n;
}

namespace {

std::string render_term(const Term& t) {
  if (t.is_constant()) return "\"" + t.name() + "\"";
  return t.str();
}

std::string render_atom(const Fact& f) {
  std::string out = f.relation_name() + "(";
  for (std::size_t i = 0; i < f.terms.size(); ++i) out += (i ? ", " : "") + render_term(f.terms[i]);
  return out + ")";
}

std::string render_vars(const std::vector<Term>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? ", " : "") + render_term(vars[i]);
  return out;
}

}  // namespace

std::string Formula::str() const {
  auto joined = [&](const char* op) {
    std::string out = "(";
    for (std::size_t i = 0; i < children.size(); ++i) out += (i ? op : "") + children[i].str();
    return out + ")";
  };
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return render_atom(atom);
    case Kind::Eq: return render_term(left) + " = " + render_term(right);
    case Kind::Neq: return render_term(left) + " != " + render_term(right);
    case Kind::Not: return "!" + children[0].str();
    case Kind::And: return joined(" & ");
    case Kind::Or: return joined(" | ");
    case Kind::Implies: return "(" + children[0].str() + " -> " + children[1].str() + ")";
    case Kind::Exists: return "(exists " + render_vars(bound) + ": " + children[0].str() + ")";
    case Kind::Forall: return "(forall " + render_vars(bound) + ": " + children[0].str() + ")";
  }
  return "?";
}

// ---- Disjunct ----

std::optional<Disjunct> Disjunct::normalized() const {
  TermPartition partition;
  for (const auto& [l, r] : equalities)
    if (!partition.merge(l, r)) return std::nullopt;
  std::set<Term> anchored;
  for (const auto& f : positive)
    for (const auto& t : f.terms) anchored.insert(t);
  // Representative: the class constant, else a positively anchored variable, else the least member.
  std::map<Term, Term> best;
  auto consider = [&](const Term& t) {
    const Term root = partition.find(t);
    if (auto c = partition.constant_of(t)) {
      best[root] = *c;
      return;
    }
    auto [it, fresh] = best.emplace(root, t);
    if (fresh) return;
    const bool t_anchored = anchored.count(t) != 0, cur_anchored = anchored.count(it->second) != 0;
    if ((t_anchored && !cur_anchored) || (t_anchored == cur_anchored && t < it->second)) it->second = t;
  };
  auto each_term = [&](auto&& fn) {
    for (auto& t : head) fn(t);
    for (auto& f : positive)
      for (auto& t : f.terms) fn(t);
    for (auto& f : negative)
      for (auto& t : f.terms) fn(t);
    for (auto& [l, r] : disequalities) fn(l), fn(r);
    for (auto& [l, r] : equalities) fn(l), fn(r);
  };
  Disjunct out = *this;
  out.equalities.clear();
  each_term(consider);
  auto rename = [&](Term& t) { t = best.at(partition.find(t)); };
  for (auto& t : out.head) rename(t);
  for (auto& f : out.positive)
    for (auto& t : f.terms) rename(t);
  for (auto& f : out.negative)
    for (auto& t : f.terms) rename(t);
  std::vector<std::pair<Term, Term>> kept;
  for (auto [l, r] : out.disequalities) {
    rename(l);
    rename(r);
    if (l == r) return std::nullopt;
    if (l.is_constant() && r.is_constant()) continue;
    if (r < l) std::swap(l, r);
    if (std::find(kept.begin(), kept.end(), std::pair{l, r}) == kept.end()) kept.emplace_back(l, r);
  }
  out.disequalities = std::move(kept);
  std::sort(out.positive.begin(), out.positive.end());
  out.positive.erase(std::unique(out.positive.begin(), out.positive.end()), out.positive.end());
  std::sort(out.negative.begin(), out.negative.end());
  out.negative.erase(std::unique(out.negative.begin(), out.negative.end()), out.negative.end());
  for (const auto& n : out.negative)
    if (n.is_ground() && std::find(out.positive.begin(), out.positive.end(), n) != out.positive.end())
      return std::nullopt;
  return out;
}

std::optional<Disjunct> Disjunct::instantiate(const std::vector<Term>& tuple) const {
  if (tuple.size() != head.size()) throw std::invalid_argument("answer tuple arity does not match the query head");
  Disjunct bound = *this;
  for (std::size_t i = 0; i < tuple.size(); ++i) bound.equalities.emplace_back(head[i], tuple[i]);
  return bound.normalized();
}

Disjunct Disjunct::without_unanchored() const {
  std::set<Term> anchored;
  for (const auto& f : positive)
    for (const auto& t : f.terms) anchored.insert(t);
  auto ok = [&](const Term& t) { return !t.is_variable() || anchored.count(t); };
  Disjunct out = *this;
  std::erase_if(out.negative, [&](const Fact& f) { return !std::all_of(f.terms.begin(), f.terms.end(), ok); });
  std::erase_if(out.disequalities, [&](const auto& d) { return !ok(d.first) || !ok(d.second); });
  return out;
}

Formula Disjunct::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& f : positive) parts.push_back(Formula::make_atom(f));
  for (const auto& f : negative) parts.push_back(Formula::negate(Formula::make_atom(f)));
  for (const auto& [l, r] : equalities) parts.push_back(Formula::equal(l, r));
  for (const auto& [l, r] : disequalities) parts.push_back(Formula::not_equal(l, r));
  Formula body = Formula::conjunction(std::move(parts));
  std::set<Term> heads(head.begin(), head.end());
  std::vector<Term> existential;
  for (const auto& v : body.free_variables())
    if (!heads.count(v)) existential.push_back(v);
  return Formula::quantified(Kind::Exists, std::move(existential), std::move(body));
}

std::string Disjunct::str() const {
  std::vector<std::string> parts;
  for (const auto& f : positive) parts.push_back(render_atom(f));
  for (const auto& f : negative) parts.push_back("not " + render_atom(f));
  for (const auto& [l, r] : equalities) parts.push_back(render_term(l) + " = " + render_term(r));
  for (const auto& [l, r] : disequalities) parts.push_back(render_term(l) + " != " + render_term(r));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

// ---- Query ----

Formula Query::to_formula() const {
  std::set<Term> heads(head.begin(), head.end());
  auto close = [&](Formula body) {
    std::vector<Term> extra;
    for (const auto& v : body.free_variables())
      if (!heads.count(v)) extra.push_back(v);
    return Formula::quantified(Kind::Exists, std::move(extra), std::move(body));
  };
  switch (mode) {
    case Mode::Existential: {
      std::vector<Formula> parts;
      for (const auto& d : disjuncts) {
        // Each disjunct may rename head variables through equalities; restore them.
        Disjunct copy = d;
        for (std::size_t i = 0; i < head.size(); ++i)
          if (copy.head[i] != head[i]) copy.equalities.emplace_back(head[i], copy.head[i]);
        copy.head = head;
        parts.push_back(copy.to_formula());
      }
      return Formula::disjunction(std::move(parts));
    }
    case Mode::Universal:
      return close(Formula::quantified(Kind::Forall, universal, matrix));
    case Mode::FirstOrder:
      return close(matrix);
  }
  return Formula::truth(false);
}

std::set<Term> Query::constants() const { return to_formula().constants(); }

std::string Query::str() const {
  std::string out = name + "(" + render_vars(head) + ") :- ";
  switch (mode) {
    case Mode::Existential:
      for (std::size_t i = 0; i < disjuncts.size(); ++i) out += (i ? "; " : "") + disjuncts[i].str();
      break;
    case Mode::Universal:
      out += "forall " + render_vars(universal) + ": " + matrix.str();
      break;
    case Mode::FirstOrder:
      out += matrix.str();
      break;
  }
  return out + ".";
}

// ---- Parser ----

namespace {

bool keyword(const Token& t, std::string_view w) { return t.kind == Tok::Ident && t.text == w; }

class Parser {
 public:
  explicit Parser(TokenStream& in) : in_(in) {}

  Formula formula() {
    Formula lhs = disjunction();
    if (in_.accept(Tok::Arrow)) return Formula::implies(std::move(lhs), formula());
    return lhs;
  }

  std::vector<Term> variables() {
    std::vector<Term> vars;
    do vars.push_back(Term::variable(in_.expect(Tok::Ident, "variable").text));
    while (in_.accept(Tok::Comma));
    return vars;
  }

 private:
  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (in_.accept(Tok::Bar) || in_.accept(Tok::Semi)) parts.push_back(conjunction());
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (in_.accept(Tok::Amp) || in_.accept(Tok::Comma)) parts.push_back(unary());
    return Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (in_.accept(Tok::Bang)) return Formula::negate(unary());
    const Token& t = in_.peek();
    const bool call = in_.peek(1).kind == Tok::LParen;
    if (!call && keyword(t, "not")) {
      in_.next();
      return Formula::negate(unary());
    }
    if (!call && (keyword(t, "exists") || keyword(t, "forall"))) {
      const Kind kind = t.text == "exists" ? Kind::Exists : Kind::Forall;
      in_.next();
      auto vars = variables();
      in_.expect(Tok::Colon, "':' after quantified variables");
      return Formula::quantified(kind, std::move(vars), formula());
    }
    return primary();
  }

  Term term() {
    const Token& t = in_.next();
    if (t.kind == Tok::Ident) return Term::variable(t.text);
    if (t.kind == Tok::Quoted) return Term::constant(t.text);
    throw ParseError(t.line, t.column, "expected a variable or quoted constant");
  }

  Formula primary() {
    if (in_.accept(Tok::LParen)) {
      Formula f = formula();
      in_.expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = in_.peek();
    const bool call = in_.peek(1).kind == Tok::LParen;
    if (!call && keyword(t, "true")) return in_.next(), Formula::truth(true);
    if (!call && keyword(t, "false")) return in_.next(), Formula::truth(false);
    if (t.kind == Tok::Ident && call) {
      Fact atom(intern(in_.next().text), {});
      in_.expect(Tok::LParen, "'('");
      if (!in_.at(Tok::RParen)) {
        do atom.terms.push_back(term());
        while (in_.accept(Tok::Comma));
      }
      in_.expect(Tok::RParen, "')'");
      return Formula::make_atom(std::move(atom));
    }
    Term l = term();
    if (in_.accept(Tok::Eq)) return Formula::equal(l, term());
    if (in_.accept(Tok::Neq)) return Formula::not_equal(l, term());
    in_.fail("expected an atom, '=' or '!='");
  }

  TokenStream& in_;
};

// Flattens a quantifier-free formula that is a disjunction of conjunctions of literals.
std::optional<std::vector<Disjunct>> as_ucq(const Formula& f, const std::vector<Term>& head) {
  if (!f.quantifier_free()) return std::nullopt;
  std::vector<const Formula*> disjuncts;
  if (f.kind == Kind::Or)
    for (const auto& c : f.children) disjuncts.push_back(&c);
  else
    disjuncts.push_back(&f);
  std::vector<Disjunct> out;
  for (const Formula* d : disjuncts) {
    std::vector<const Formula*> literals;
    if (d->kind == Kind::And)
      for (const auto& c : d->children) literals.push_back(&c);
    else
      literals.push_back(d);
    Disjunct dj;
    dj.head = head;
    for (const Formula* l : literals) {
      switch (l->kind) {
        case Kind::Atom: dj.positive.push_back(l->atom); break;
        case Kind::Eq: dj.equalities.emplace_back(l->left, l->right); break;
        case Kind::Neq: dj.disequalities.emplace_back(l->left, l->right); break;
        case Kind::Not:
          if (l->children[0].kind != Kind::Atom) return std::nullopt;
          dj.negative.push_back(l->children[0].atom);
          break;
        default: return std::nullopt;
      }
    }
    out.push_back(std::move(dj));
  }
  return out;
}

// And/or nesting over atoms, (dis)equalities and negated atoms.
bool literal_nesting(const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
    case Kind::Eq:
    case Kind::Neq: return true;
    case Kind::Not: return f.children[0].kind == Kind::Atom;
    case Kind::And:
    case Kind::Or: return std::all_of(f.children.begin(), f.children.end(), literal_nesting);
    default: return false;
  }
}

void check_safety(const Query& q) {
  for (const auto& d : q.disjuncts) {
    TermPartition partition;
    for (const auto& [l, r] : d.equalities) partition.merge(l, r);
    std::set<Term> anchored_roots;
    for (const auto& f : d.positive)
      for (const auto& t : f.terms) anchored_roots.insert(partition.find(t));
    for (const auto& h : q.head)
      if (!anchored_roots.count(partition.find(h)) && !partition.constant_of(h))
        throw UnsafeQueryError("head variable " + h.str() + " does not occur in a positive atom of disjunct '" +
                               d.str() + "'");
  }
}

}  // namespace

Query parse_query(std::string_view text) {
  TokenStream in(tokenize(text));
  Query q;
  q.name = in.expect(Tok::Ident, "query name").text;
  in.expect(Tok::LParen, "'('");
  if (!in.at(Tok::RParen)) {
    do q.head.push_back(Term::variable(in.expect(Tok::Ident, "head variable").text));
    while (in.accept(Tok::Comma));
  }
  in.expect(Tok::RParen, "')'");
  in.expect(Tok::Turnstile, "':-'");
  Parser parser(in);
  Formula body = parser.formula();
  in.expect(Tok::Dot, "'.' at end of query");
  if (!in.at(Tok::End)) in.fail("unexpected input after the query");

  std::set<Term> heads(q.head.begin(), q.head.end());
  auto ucq = as_ucq(body, q.head);
  if (!ucq && literal_nesting(body)) ucq = to_dnf(body, q.head);
  if (ucq) {
    q.mode = Mode::Existential;
    q.disjuncts = std::move(*ucq);
    check_safety(q);
    return q;
  }
  if (body.kind == Kind::Forall && body.children[0].quantifier_free()) {
    auto free = body.children[0].free_variables();
    std::set<Term> allowed = heads;
    allowed.insert(body.bound.begin(), body.bound.end());
    if (std::includes(allowed.begin(), allowed.end(), free.begin(), free.end())) {
      q.mode = Mode::Universal;
      q.universal = body.bound;
      q.matrix = body.children[0];
      return q;
    }
  }
  q.mode = Mode::FirstOrder;
  q.matrix = std::move(body);
  return q;
}

// ---- DNF ----

namespace {

using Dnf = std::vector<std::vector<Formula>>;  // disjunction of conjunctions of literals

Dnf dnf(const Formula& f, bool positive, std::size_t cap) {
  auto product = [&](const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const auto& x : a)
      for (const auto& y : b) {
        auto conj = x;
        conj.insert(conj.end(), y.begin(), y.end());
        out.push_back(std::move(conj));
        if (out.size() > cap) throw std::length_error("DNF exceeds " + std::to_string(cap) + " disjuncts");
      }
    return out;
  };
  auto sum = [&](Dnf a, const Dnf& b) {
    a.insert(a.end(), b.begin(), b.end());
    if (a.size() > cap) throw std::length_error("DNF exceeds " + std::to_string(cap) + " disjuncts");
    return a;
  };
  switch (f.kind) {
    case Kind::True: return positive ? Dnf{{}} : Dnf{};
    case Kind::False: return positive ? Dnf{} : Dnf{{}};
    case Kind::Atom: return {{positive ? f : Formula::negate(f)}};
    case Kind::Eq: return {{positive ? f : Formula::not_equal(f.left, f.right)}};
    case Kind::Neq: return {{positive ? f : Formula::equal(f.left, f.right)}};
    case Kind::Not: return dnf(f.children[0], !positive, cap);
    case Kind::And:
    case Kind::Or: {
      const bool conjunctive = (f.kind == Kind::And) == positive;
      Dnf acc = conjunctive ? Dnf{{}} : Dnf{};
      for (const auto& c : f.children) {
        Dnf part = dnf(c, positive, cap);
        acc = conjunctive ? product(acc, part) : sum(std::move(acc), part);
      }
      return acc;
    }
    case Kind::Implies: {
      Formula as_or = Formula::disjunction({Formula::negate(f.children[0]), f.children[1]});
      return dnf(as_or, positive, cap);
    }
    case Kind::Exists:
    case Kind::Forall:
      throw std::invalid_argument("DNF conversion requires a quantifier-free formula");
  }
  return {};
}

}  // namespace

std::vector<Disjunct> to_dnf(const Formula& formula, const std::vector<Term>& head, std::size_t cap) {
  std::vector<Disjunct> out;
  for (const auto& conj : dnf(formula, true, cap)) {
    if (conj.empty()) {
      Disjunct d;
      d.head = head;
      out.push_back(std::move(d));
    } else {
      out.push_back(std::move(as_ucq(Formula::conjunction(conj), head)->front()));
    }
  }
  return out;
}

}  // namespace dx::query
