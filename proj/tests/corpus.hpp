#pragma once

#include <vector>

#include "pml/formula.hpp"

namespace testing {

/// Every formula over `atoms` with connectives &, |, -> and depth <= depth,
/// each exactly once, shallower formulas first.
inline std::vector<pml::Formula> all_formulas(const std::vector<pml::Formula>& atoms, int depth) {
  std::vector<pml::Formula> all = atoms;
  std::size_t prev_end = 0;  // formulas in [prev_end, all.size()) have maximal depth so far
  for (int d = 1; d <= depth; ++d) {
    const std::size_t n = all.size();
    std::vector<pml::Formula> next;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i < prev_end && j < prev_end) continue;  // both shallower: built earlier
        next.push_back(pml::Formula::conj(all[i], all[j]));
        next.push_back(pml::Formula::disj(all[i], all[j]));
        next.push_back(pml::Formula::imp(all[i], all[j]));
      }
    prev_end = n;
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

}  // namespace testing
