#include "dx/oracle/kernel.hpp"

#include <exception>

namespace dx::oracle {

std::vector<char> check_candidates(const std::vector<Instance>& candidates, const CandidatePredicate& predicate) {
  std::vector<char> verdicts(candidates.size(), 0);
  std::exception_ptr error;
  const auto n = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      verdicts[i] = predicate(candidates[i]) ? 1 : 0;
    } catch (...) {
#pragma omp critical(dx_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return verdicts;
}

std::vector<char> check_candidates_serial(const std::vector<Instance>& candidates,
                                          const CandidatePredicate& predicate) {
  std::vector<char> verdicts;
  verdicts.reserve(candidates.size());
  for (const auto& c : candidates) verdicts.push_back(predicate(c) ? 1 : 0);
  return verdicts;
}

}  // namespace dx::oracle
