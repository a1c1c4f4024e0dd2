#pragma once

#include "bvmatch/flow_network.hpp"
#include "bvmatch/instance.hpp"
#include "bvmatch/venn_atoms.hpp"

namespace bvmatch {

/// Tests ν(∪_{i∈I} A_i) >= Σ_{i∈I} m_i for every nonempty I via the atom
/// table. Reports the I of largest deficit, smallest mask on ties.
inline Certificate check_exhaustive(const Instance& inst, const AtomTable& table) {
  const std::size_t n = inst.n();
  if (n > kMaxExhaustiveSets) {
    fail(ErrorKind::instance_too_large, "exhaustive check is capped at n=" + std::to_string(kMaxExhaustiveSets));
  }
  std::optional<ViolatingSet> worst;
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    SubsetMask i_set(bits);
    Rational lhs = union_measure(table, i_set);
    Rational rhs = inst.demand_sum(i_set);
    if (lhs < rhs && (!worst || rhs - lhs > worst->deficit())) worst = ViolatingSet{i_set, lhs, rhs};
  }
  return worst ? Certificate::violated(*worst) : Certificate::make_feasible();
}

inline Certificate check_exhaustive(const Instance& inst) { return check_exhaustive(inst, atomize(inst.subsets())); }

/// Feasible iff the atom-demand max flow saturates every demand; otherwise the
/// min-cut index set is returned.
inline Certificate check_flow(const Instance& inst) {
  AtomTable table = atomize(inst.subsets());
  FlowSolution sol = max_flow(build_network(inst, table));
  if (sol.value == inst.total_demand()) return Certificate::make_feasible();
  ensure(sol.value < inst.total_demand(), "flow exceeds total demand");
  return Certificate::violated(min_cut_violation(inst, table, sol));
}

}  // namespace bvmatch
