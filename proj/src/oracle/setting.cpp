#include "setting.hpp"

#include "dx/mapping/analysis.hpp"

namespace dx::oracle::detail {

namespace {

std::vector<Fact> facts_of(const std::vector<mapping::Atom>& atoms) {
  std::vector<Fact> out;
  for (const auto& a : atoms) out.push_back(a.to_fact());
  return out;
}

std::vector<Term> values_of(const Homomorphism& h, const std::vector<Term>& vars) {
  std::vector<Term> out;
  for (const auto& v : vars) out.push_back(h.at(v));
  return out;
}

auto is_var = [](const Term& t) { return t.is_variable(); };

}  // namespace

Instance Setting::project(const Instance& labeled_set) const {
  if (!labeled) return labeled_set;
  Instance out;
  for (const auto& f : labeled_set) out.insert(Fact(projection.at(f.relation).first, f.terms));
  return out;
}

TupleLabeling Setting::labeling(const Instance& labeled_set) const {
  TupleLabeling out;
  for (const auto& f : labeled_set) {
    const auto& [rel, label] = projection.at(f.relation);
    out[Fact(rel, f.terms)].insert(label);
  }
  return out;
}

FrontierSets Setting::frontier_sets_within(const Instance& sub) const {
  FrontierSets sets(deps.size());
  for (const auto& t : triggers)
    for (const auto& body : t.bodies)
      if (std::all_of(body.begin(), body.end(), [&](const Fact& f) { return sub.contains(f); })) {
        sets[t.dependency].insert(t.frontier_values);
        break;
      }
  return sets;
}

Setting make_setting(const Instance& source, const mapping::MappingProgram& input, View view,
                     const std::vector<Term>& domain) {
  Setting s;
  s.source = source;
  s.domain = domain;
  if (view == View::Labeled) {
    const mapping::MappingProgram program =
        input.annotated() || input.tgds.empty() ? input : mapping::translate_tgds(input).program;
    const auto views = mapping::derive_views(program);
    s.labeled = true;
    for (std::size_t k = 0; k < program.abds.size(); ++k) {
      const auto& original = program.abds[k];
      const auto& abd = views.diamond.abds[k];
      s.deps.push_back({facts_of(abd.body), facts_of(abd.head), abd.shared, abd.head_only});
      for (std::size_t i = 0; i < abd.head.size(); ++i)
        s.projection[abd.head[i].relation] = {original.head[i].relation, original.head[i].annotation};
    }
    for (std::size_t k = 0; k < program.aegds.size(); ++k) {
      const auto& e = views.diamond.aegds[k];
      s.egds.push_back({facts_of(e.body), e.left, e.right});
      for (std::size_t i = 0; i < e.body.size(); ++i)
        s.projection[e.body[i].relation] = {program.aegds[k].body[i].relation, program.aegds[k].body[i].annotation};
    }
  } else {
    std::vector<mapping::Tgd> tgds = input.tgds;
    std::vector<mapping::Egd> egds = input.egds;
    if (input.annotated()) {
      tgds = mapping::derive_views(input).forward;
      for (const auto& e : input.aegds) {
        mapping::Egd egd{e.body, e.left, e.right};
        for (auto& a : egd.body) a.annotation = 0;
        egds.push_back(std::move(egd));
      }
    }
    for (const auto& t : tgds) s.deps.push_back({facts_of(t.body), facts_of(t.head), t.frontier, t.existentials});
    for (const auto& e : egds) s.egds.push_back({facts_of(e.body), e.left, e.right});
  }

  s.frontier_sets.resize(s.deps.size());
  for (std::size_t d = 0; d < s.deps.size(); ++d) {
    const Dependency& dep = s.deps[d];
    std::map<std::vector<Term>, std::size_t> by_frontier;
    for (const auto& h : find_homomorphisms(dep.body, source)) {
      auto values = values_of(h, dep.frontier);
      auto [it, fresh] = by_frontier.emplace(values, s.triggers.size());
      if (fresh) {
        Trigger t;
        t.dependency = d;
        t.frontier_values = values;
        s.triggers.push_back(std::move(t));
      }
      s.triggers[it->second].bodies.push_back(substitute(h, dep.body));
      s.frontier_sets[d].insert(values);
    }
  }
  for (auto& t : s.triggers) {
    const Dependency& dep = s.deps[t.dependency];
    Homomorphism h;
    for (std::size_t i = 0; i < dep.frontier.size(); ++i) h[dep.frontier[i]] = t.frontier_values[i];
    const std::set<Term> existential(dep.existentials.begin(), dep.existentials.end());
    for (const auto& a : dep.head)
      if (std::none_of(a.terms.begin(), a.terms.end(), [&](const Term& x) { return existential.count(x); }))
        t.strong.push_back(substitute(h, a));
    std::set<std::vector<Fact>> images;
    std::vector<std::size_t> pick(dep.existentials.size(), 0);
    if (!dep.existentials.empty() && domain.empty()) continue;
    while (true) {
      for (std::size_t i = 0; i < pick.size(); ++i) h[dep.existentials[i]] = domain[pick[i]];
      auto image = substitute(h, dep.head);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      images.insert(std::move(image));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == domain.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    t.images.assign(images.begin(), images.end());
  }
  std::stable_sort(s.triggers.begin(), s.triggers.end(),
                   [](const Trigger& a, const Trigger& b) { return a.images.size() < b.images.size(); });
  s.pending.assign(s.triggers.size() + 1, {});
  for (std::size_t k = s.triggers.size(); k-- > 0;) {
    s.pending[k] = s.pending[k + 1];
    for (const auto& image : s.triggers[k].images)
      for (const auto& f : image)
        s.pending[k].insert(s.labeled ? s.projection.at(f.relation).first : f.relation);
  }
  return s;
}

bool egds_hold(const std::vector<EqualityRule>& rules, const Instance& instance) {
  if (rules.empty()) return true;
  RelationIndex index(instance);
  for (const auto& r : rules) {
    auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& { return index.facts(r.body[i].relation); };
    Binding b;
    std::vector<const Fact*> chosen;
    bool fine = for_each_match(r.body, candidates, is_var, b, chosen, [&](const Binding& m, const auto&) {
      return m.resolve(r.left) == m.resolve(r.right);
    });
    if (!fine) return false;
  }
  return true;
}

bool backward_holds(const Setting& s, const Instance& target, const FrontierSets& sets) {
  RelationIndex index(target);
  for (std::size_t d = 0; d < s.deps.size(); ++d) {
    const Dependency& dep = s.deps[d];
    auto candidates = [&](std::size_t i) -> const std::vector<const Fact*>& { return index.facts(dep.head[i].relation); };
    Binding b;
    std::vector<const Fact*> chosen;
    bool fine = for_each_match(dep.head, candidates, is_var, b, chosen, [&](const Binding& m, const auto&) {
      std::vector<Term> values;
      for (const auto& v : dep.frontier) values.push_back(m.resolve(v));
      return sets[d].count(values) != 0;
    });
    if (!fine) return false;
  }
  return true;
}

void SearchState::add(std::size_t dep, const std::vector<Fact>& facts) {
  for (const auto& f : facts) {
    if (counts[f]++ == 0) current.insert(f);
    if (dep_counts[dep][f]++ == 0) dep_current[dep].insert(f);
  }
}

void SearchState::remove(std::size_t dep, const std::vector<Fact>& facts) {
  for (const auto& f : facts) {
    if (--counts[f] == 0) {
      counts.erase(f);
      current.erase(f);
    }
    if (--dep_counts[dep][f] == 0) {
      dep_counts[dep].erase(f);
      dep_current[dep].erase(f);
    }
  }
}

std::vector<std::vector<std::size_t>> all_images(const Setting& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& t : s.triggers) {
    std::vector<std::size_t> idx(t.images.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    out.push_back(std::move(idx));
  }
  return out;
}

std::vector<std::vector<std::size_t>> images_within(const Setting& s, const std::function<bool(const Fact&)>& allowed) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& t : s.triggers) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < t.images.size(); ++i)
      if (std::all_of(t.images[i].begin(), t.images[i].end(), allowed)) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  return out;
}

bool all_witnessed(const Setting& s, const Instance& labeled_set) {
  auto inside = [](const std::vector<Fact>& image, const Instance& in) {
    return std::all_of(image.begin(), image.end(), [&](const Fact& f) { return in.contains(f); });
  };
  // Every fact of a minimal model lies in an image of a fired trigger.
  std::set<Fact> supported;
  for (const auto& t : s.triggers)
    for (const auto& image : t.images)
      if (inside(image, labeled_set)) supported.insert(image.begin(), image.end());
  if (supported.size() != labeled_set.size()) return false;

  const std::vector<Fact> source = s.source.to_vector();
  constexpr std::size_t kMaxSubsets = std::size_t{1} << 22;
  std::size_t examined = 0;
  std::set<Fact> marked;
  // Small source subsets first: their minimal models are small and usually witness most facts.
  for (std::size_t size = 1; size <= source.size(); ++size) {
    std::vector<bool> select(source.size(), false);
    std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      if (++examined > kMaxSubsets) throw BudgetExceeded("witness search examined more than 2^22 source subsets");
      Instance sub;
      for (std::size_t i = 0; i < source.size(); ++i)
        if (select[i]) sub.insert(source[i]);
      std::vector<std::size_t> fired;
      for (std::size_t k = 0; k < s.triggers.size(); ++k)
        for (const auto& body : s.triggers[k].bodies)
          if (inside(body, sub)) {
            fired.push_back(k);
            break;
          }
      if (fired.empty()) continue;
      // Subsets with facts that fire nothing fire the same triggers as a smaller subset and
      // only weaken the backward check.
      std::set<Fact> used;
      for (std::size_t k : fired)
        for (const auto& body : s.triggers[k].bodies)
          if (inside(body, sub)) used.insert(body.begin(), body.end());
      if (used.size() != sub.size()) continue;
      std::vector<std::vector<const std::vector<Fact>*>> options;
      bool possible = true, fresh = false;
      for (std::size_t k : fired) {
        std::vector<const std::vector<Fact>*> opts;
        for (const auto& image : s.triggers[k].images)
          if (inside(image, labeled_set)) {
            opts.push_back(&image);
            fresh = fresh || std::any_of(image.begin(), image.end(), [&](const Fact& f) { return !marked.count(f); });
          }
        if (opts.empty()) possible = false;
        options.push_back(std::move(opts));
      }
      if (!possible || !fresh) continue;
      const FrontierSets sets = s.frontier_sets_within(sub);

      auto minimal = [&](const Instance& w) {
        for (const auto& e : w) {
          const bool avoidable = std::all_of(options.begin(), options.end(), [&](const auto& opts) {
            return std::any_of(opts.begin(), opts.end(), [&](const std::vector<Fact>* image) {
              return std::find(image->begin(), image->end(), e) == image->end() && inside(*image, w);
            });
          });
          if (avoidable) return false;
        }
        return true;
      };
      std::map<Fact, int> counts;
      Instance w;
      auto go = [&](auto&& self, std::size_t i) -> bool {
        if (i == options.size()) {
          if (std::any_of(w.begin(), w.end(), [&](const Fact& f) { return !marked.count(f); }) && minimal(w))
            marked.insert(w.begin(), w.end());
          return marked.size() != labeled_set.size();
        }
        for (const auto* image : options[i]) {
          for (const auto& f : *image)
            if (counts[f]++ == 0) w.insert(f);
          bool go_on = true;
          if (backward_holds(s, w, sets) && egds_hold(s.egds, w)) go_on = self(self, i + 1);
          for (const auto& f : *image)
            if (--counts[f] == 0) w.erase(f);
          if (!go_on) return false;
        }
        return true;
      };
      if (!go(go, 0)) return true;
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return marked.size() == labeled_set.size();
}

}  // namespace dx::oracle::detail
