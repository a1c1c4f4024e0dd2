#pragma once

#include <string>
#include <vector>

#include "bvmatch/instance.hpp"

namespace bvmatch::harness {

struct ValidationReport {
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// Checks B_k ⊆ A_k, pairwise disjointness and ν(B_k) = m_k exactly.
inline ValidationReport validate(const Instance& inst, const std::vector<IntervalSet>& parts) {
  ValidationReport rep;
  if (parts.size() != inst.n()) {
    rep.failures.push_back("expected " + std::to_string(inst.n()) + " parts, got " + std::to_string(parts.size()));
    return rep;
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& name = inst.names()[k];
    if (!is_subset(parts[k], inst.subsets()[k])) {
      rep.failures.push_back("subset: B for " + name + " leaves " + name + " on " +
                             set_difference(parts[k], inst.subsets()[k]).str());
    }
    if (parts[k].measure() != inst.demands()[k]) {
      rep.failures.push_back("measure: B for " + name + " has " + parts[k].measure().str() + ", demand " +
                             inst.demands()[k].str());
    }
    for (std::size_t l = k + 1; l < parts.size(); ++l) {
      auto overlap = set_intersect(parts[k], parts[l]);
      if (!overlap.empty()) {
        rep.failures.push_back("disjointness: B for " + name + " and " + inst.names()[l] + " share " + overlap.str());
      }
    }
  }
  return rep;
}

}  // namespace bvmatch::harness
