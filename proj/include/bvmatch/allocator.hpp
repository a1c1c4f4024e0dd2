#pragma once

#include <variant>
#include <vector>

#include "bvmatch/flow_network.hpp"
#include "bvmatch/instance.hpp"
#include "bvmatch/venn_atoms.hpp"

namespace bvmatch {

/// Disjoint B_k ⊆ A_k with ν(B_k) = m_k.
struct Allocation {
  std::vector<IntervalSet> parts;
};

using AllocationResult = std::variant<Allocation, ViolatingSet>;

/// Builds B_k exactly from a maximum flow: within each atom the used measure
/// is carved leftmost and split among its demands in ascending k.
inline AllocationResult allocate_exact(const Instance& inst) {
  AtomTable table = atomize(inst.subsets());
  FlowSolution sol = max_flow(build_network(inst, table));
  if (sol.value < inst.total_demand()) return min_cut_violation(inst, table, sol);
  ensure(sol.value == inst.total_demand(), "flow exceeds total demand");

  // links are ordered by demand, so per-atom shares come out in ascending k
  std::vector<std::vector<const LinkFlow*>> per_atom(table.atoms().size());
  for (const auto& l : sol.links) {
    if (l.flow.sign() > 0) per_atom[l.atom].push_back(&l);
  }
  std::vector<std::vector<Interval>> pieces(inst.n());
  for (std::size_t j = 0; j < per_atom.size(); ++j) {
    if (per_atom[j].empty()) continue;
    std::vector<Rational> shares;
    Rational used;
    for (const auto* l : per_atom[j]) {
      shares.push_back(l->flow);
      used += l->flow;
    }
    auto parts = partition(carve(table.atoms()[j].region, used), shares);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto& dst = pieces[per_atom[j][i]->demand];
      dst.insert(dst.end(), parts[i].parts().begin(), parts[i].parts().end());
    }
  }
  Allocation out;
  out.parts.reserve(inst.n());
  for (std::size_t k = 0; k < inst.n(); ++k) {
    out.parts.emplace_back(std::move(pieces[k]));
    ensure(out.parts[k].measure() == inst.demands()[k], "allocated measure differs from demand for " + inst.names()[k]);
  }
  return out;
}

}  // namespace bvmatch
