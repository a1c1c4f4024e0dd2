#pragma once

#include <optional>

#include "bvmatch/instance.hpp"

namespace bvmatch::harness {

/// Ground truth for the matching condition using nothing but interval-set
/// unions: no atom table, no flow. Same tie-break as check_exhaustive.
inline Certificate oracle(const Instance& inst) {
  const std::size_t n = inst.n();
  if (n > kMaxExhaustiveSets) {
    fail(ErrorKind::oracle_scale, "oracle is limited to n <= " + std::to_string(kMaxExhaustiveSets));
  }
  std::optional<ViolatingSet> worst;
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    IntervalSet u;
    Rational rhs;
    for (std::size_t k = 0; k < n; ++k) {
      if (!((bits >> k) & 1U)) continue;
      u = set_union(u, inst.subsets()[k]);
      rhs += inst.demands()[k];
    }
    Rational lhs = u.measure();
    if (lhs < rhs && (!worst || rhs - lhs > worst->deficit())) worst = ViolatingSet{SubsetMask(bits), lhs, rhs};
  }
  return worst ? Certificate::violated(*worst) : Certificate::make_feasible();
}

/// Recomputes both sides of a claimed violation by direct union.
inline bool violation_holds(const Instance& inst, const ViolatingSet& v) {
  IntervalSet u;
  Rational rhs;
  for (auto k : v.i_set.indices()) {
    if (k >= inst.n()) return false;
    u = set_union(u, inst.subsets()[k]);
    rhs += inst.demands()[k];
  }
  return u.measure() == v.lhs && rhs == v.rhs && v.lhs < v.rhs;
}

}  // namespace bvmatch::harness
