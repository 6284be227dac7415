#pragma once

#include <functional>
#include <vector>

#include "dx/core/instance.hpp"

namespace dx::oracle {

using CandidatePredicate = std::function<bool(const Instance&)>;

// verdicts[i] = predicate(candidates[i]). The parallel kernel distributes candidates over
// OpenMP threads; exceptions from any candidate are rethrown after the loop.
std::vector<char> check_candidates(const std::vector<Instance>& candidates, const CandidatePredicate& predicate);
std::vector<char> check_candidates_serial(const std::vector<Instance>& candidates,
                                          const CandidatePredicate& predicate);

}  // namespace dx::oracle
