#include "dx/core/table.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dx/core/homomorphism.hpp"

namespace dx {

Instance apply_valuation(const SemiNaiveTable& table, const Valuation& v) {
  Instance out;
  for (const auto& f : table) {
    Fact g = f;
    for (auto& t : g.terms) {
      if (!t.is_null()) continue;
      auto it = v.assignment.find(t);
      if (it == v.assignment.end()) throw std::invalid_argument("valuation misses null " + t.str());
      t = it->second;
    }
    out.insert(g);
  }
  return out;
}

std::vector<std::vector<Fact>> gaifman_blocks(const std::vector<Fact>& facts,
                                              const std::function<bool(const Term&)>& is_vertex) {
  std::vector<std::size_t> parent(facts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  std::map<Term, std::size_t> owner;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    for (const auto& t : facts[i].terms) {
      if (!is_vertex(t)) continue;
      auto [it, fresh] = owner.emplace(t, i);
      if (!fresh) {
        auto a = root(i), b = root(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Fact>> blocks;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    auto r = root(i);
    auto [it, fresh] = slot.emplace(r, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(facts[i]);
  }
  return blocks;
}

std::vector<NaiveTable> gaifman_partition(const NaiveTable& table) {
  std::vector<NaiveTable> out;
  for (auto& block : gaifman_blocks(table.sorted_for_output(), [](const Term& t) { return t.is_null(); }))
    out.emplace_back(block);
  return out;
}

namespace {

bool extend_iso(const std::vector<Fact>& left, std::size_t i, const RelationIndex& right, Binding& forward,
                std::set<Term>& used) {
  if (i == left.size()) return true;
  const Fact& f = left[i];
  for (const Fact* g : right.facts(f.relation)) {
    const auto mark = forward.mark();
    std::vector<Term> newly;
    bool ok = true;
    for (std::size_t k = 0; k < f.terms.size() && ok; ++k) {
      const Term& s = f.terms[k];
      const Term& t = g->terms[k];
      if (!s.is_null()) {
        ok = s == t;
      } else if (const Term* b = forward.find(s)) {
        ok = *b == t;
      } else if (t.kind() != s.kind() || used.count(t)) {
        ok = false;
      } else {
        forward.bind(s, t);
        used.insert(t);
        newly.push_back(t);
      }
    }
    if (ok && extend_iso(left, i + 1, right, forward, used)) return true;
    for (const auto& t : newly) used.erase(t);
    forward.rollback(mark);
  }
  return false;
}

}  // namespace

bool isomorphic(const SemiNaiveTable& a, const SemiNaiveTable& b) {
  if (a.size() != b.size()) return false;
  auto na = a.nulls(), nb = b.nulls();
  if (na.size() != nb.size()) return false;
  auto count_open = [](const std::set<Term>& s) {
    return std::count_if(s.begin(), s.end(), [](const Term& t) { return t.is_open_null(); });
  };
  if (count_open(na) != count_open(nb)) return false;
  // Facts with more nulls first narrows the search early.
  auto left = a.to_vector();
  std::stable_sort(left.begin(), left.end(), [](const Fact& x, const Fact& y) {
    auto nx = std::count_if(x.terms.begin(), x.terms.end(), [](const Term& t) { return t.is_null(); });
    auto ny = std::count_if(y.terms.begin(), y.terms.end(), [](const Term& t) { return t.is_null(); });
    return nx > ny;
  });
  RelationIndex right(b);
  Binding forward;
  std::set<Term> used;
  return extend_iso(left, 0, right, forward, used);
}

CanonicalTable canonicalize(const SemiNaiveTable& table, const GlobalCondition& condition,
                            const TupleLabeling& labels) {
  auto masked = [](const Fact& f) {
    std::string out = f.relation_name() + "(";
    for (const auto& t : f.terms) {
      out += t.is_open_null() ? "?o" : t.is_closed_null() ? "?c" : t.str();
      out += ',';
    }
    return out;
  };
  auto facts = table.to_vector();
  std::stable_sort(facts.begin(), facts.end(),
                   [&](const Fact& x, const Fact& y) { return masked(x) < masked(y); });
  std::map<Term, Term> rename;
  std::uint32_t next_open = 1, next_closed = 1;
  for (const auto& f : facts)
    for (const auto& t : f.terms)
      if (t.is_null() && !rename.count(t))
        rename.emplace(t, t.is_open_null() ? Term::open_null(next_open++) : Term::closed_null(next_closed++));
  auto map_term = [&](const Term& t) {
    auto it = rename.find(t);
    return it == rename.end() ? t : it->second;
  };
  auto map_fact = [&](Fact f) {
    for (auto& t : f.terms) t = map_term(t);
    return f;
  };
  CanonicalTable out;
  for (const auto& f : table) out.table.insert(map_fact(f));
  for (const auto& clause : condition.clauses()) {
    Clause c;
    for (const auto& d : clause) c.push_back(Disequality::make(map_term(d.left), map_term(d.right)));
    out.condition.add(c);
  }
  for (const auto& [f, ls] : labels) out.labels.emplace(map_fact(f), ls);
  return out;
}

}  // namespace dx
