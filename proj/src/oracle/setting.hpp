#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dx/core/errors.hpp"
#include "dx/core/homomorphism.hpp"
#include "dx/mapping/program.hpp"
#include "dx/oracle/oracle.hpp"

namespace dx::oracle::detail {

// Source-to-target rule: body over the source, head over the (possibly labeled) target.
struct Dependency {
  std::vector<Fact> body;
  std::vector<Fact> head;
  std::vector<Term> frontier;
  std::vector<Term> existentials;
};

struct EqualityRule {
  std::vector<Fact> body;
  Term left;
  Term right;
};

// Firing of a dependency, identified by its frontier values.
struct Trigger {
  std::size_t dependency = 0;
  std::vector<Term> frontier_values;
  std::vector<std::vector<Fact>> bodies;  // every body image in the source with these values
  std::vector<std::vector<Fact>> images;  // distinct head instantiations over the domain
  std::vector<Fact> strong;               // head atoms without existential variables
};

using FrontierSets = std::vector<std::set<std::vector<Term>>>;

struct Setting {
  Instance source;
  std::vector<Dependency> deps;
  std::vector<EqualityRule> egds;
  bool labeled = false;
  std::map<SymbolId, std::pair<SymbolId, int>> projection;  // labeled relation -> (relation, label)
  std::vector<Term> domain;
  std::vector<Trigger> triggers;  // fewest images first
  FrontierSets frontier_sets;
  // pending[k]: target relations (unlabeled) that triggers k, k+1, ... can still produce.
  std::vector<std::set<SymbolId>> pending;

  Instance project(const Instance& labeled_set) const;
  TupleLabeling labeling(const Instance& labeled_set) const;
  // Frontier tuples whose body has an image inside `sub` (a subset of the source).
  FrontierSets frontier_sets_within(const Instance& sub) const;
};

enum class View { Labeled, Plain };

// Labeled: the Σ⋄ view of an annotated program (tgd programs are translated first).
// Plain: tgds + egds (annotated programs contribute their forward view and stripped aegds).
Setting make_setting(const Instance& source, const mapping::MappingProgram& program, View view,
                     const std::vector<Term>& domain);

bool egds_hold(const std::vector<EqualityRule>& rules, const Instance& instance);
// Every head match in `target` has frontier values in `sets`.
bool backward_holds(const Setting& s, const Instance& target, const FrontierSets& sets);

// Search state: multiset union of chosen images, overall and per dependency.
struct SearchState {
  std::map<Fact, int> counts;
  Instance current;
  std::vector<std::map<Fact, int>> dep_counts;
  std::vector<Instance> dep_current;
  std::vector<std::size_t> chosen;  // image index per trigger in selection searches
  std::size_t depth = 0;            // triggers before this index are decided

  explicit SearchState(std::size_t deps) : dep_counts(deps), dep_current(deps) {}
  void add(std::size_t dep, const std::vector<Fact>& facts);
  void remove(std::size_t dep, const std::vector<Fact>& facts);
};

class NodeBudget {
 public:
  explicit NodeBudget(std::size_t limit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_) throw BudgetExceeded("oracle search exceeded " + std::to_string(limit_) + " nodes");
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

// Chooses a nonempty set of images for every trigger, restricted to `allowed[k]`.
// Throws BudgetExceeded rather than skip a candidate above `max_size` facts.
// `ok(state)` must be downward closed; `leaf(state)` returns false to stop.
template <class Ok, class Leaf>
bool subset_search(const Setting& s, const std::vector<std::vector<std::size_t>>& allowed, std::size_t max_size,
                   NodeBudget& budget, Ok&& ok, Leaf&& leaf) {
  SearchState state(s.deps.size());
  auto go = [&](auto&& self, std::size_t k, std::size_t j, bool any) -> bool {
    budget.tick();
    if (k == s.triggers.size()) return leaf(state);
    const auto& options = allowed[k];
    if (j == options.size()) return any ? self(self, k + 1, 0, false) : true;
    const Trigger& t = s.triggers[k];
    const auto& image = t.images[options[j]];
    const bool redundant = std::all_of(image.begin(), image.end(), [&](const Fact& f) {
      return state.dep_counts[t.dependency].count(f) != 0;
    });
    if (redundant) return self(self, k, j + 1, true);
    state.depth = k;
    state.add(t.dependency, image);
    if (state.current.size() > max_size)
      throw BudgetExceeded("candidate instance larger than " + std::to_string(max_size) + " facts");
    bool go_on = true;
    if (ok(state)) go_on = self(self, k, j + 1, true);
    state.remove(t.dependency, image);
    if (!go_on) return false;
    return self(self, k, j + 1, any);
  };
  return go(go, 0, 0, false);
}

// Chooses exactly one image per trigger.
template <class Ok, class Leaf>
bool selection_search(const Setting& s, const std::vector<std::vector<std::size_t>>& allowed, NodeBudget& budget,
                      Ok&& ok, Leaf&& leaf) {
  SearchState state(s.deps.size());
  state.chosen.assign(s.triggers.size(), 0);
  auto go = [&](auto&& self, std::size_t k) -> bool {
    budget.tick();
    if (k == s.triggers.size()) return leaf(state);
    const Trigger& t = s.triggers[k];
    for (std::size_t idx : allowed[k]) {
      state.add(t.dependency, t.images[idx]);
      state.chosen[k] = idx;
      state.depth = k;
      bool go_on = true;
      if (ok(state)) go_on = self(self, k + 1);
      state.remove(t.dependency, t.images[idx]);
      if (!go_on) return false;
    }
    return true;
  };
  return go(go, 0);
}

std::vector<std::vector<std::size_t>> all_images(const Setting& s);
// Images whose facts all lie in `target` (labeled or plain, matching the setting).
std::vector<std::vector<std::size_t>> images_within(const Setting& s, const std::function<bool(const Fact&)>& allowed);

// Every fact of the labeled set lies in a minimal model of some subset of the source.
bool all_witnessed(const Setting& s, const Instance& labeled_set);

}  // namespace dx::oracle::detail
