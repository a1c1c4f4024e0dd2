#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "bvmatch/interval_set.hpp"
#include "bvmatch/max_flow.hpp"
#include "bvmatch/subset_mask.hpp"

namespace bvmatch {

using ElementId = std::int64_t;

/// Finite ground set with subsets A_1..A_n and cardinality demands d_k >= 1.
struct DiscreteInstance {
  std::vector<ElementId> ground;
  std::vector<std::vector<ElementId>> subsets;
  std::vector<std::int64_t> demands;

  std::size_t n() const { return subsets.size(); }
};

struct DiscreteSolution {
  std::vector<std::vector<ElementId>> parts;  // D_k in ground order; empty when infeasible
  std::optional<SubsetMask> violating;

  bool feasible() const { return !violating.has_value(); }
  friend bool operator==(const DiscreteSolution&, const DiscreteSolution&) = default;
};

inline void validate(const DiscreteInstance& inst) {
  if (inst.subsets.empty()) fail(ErrorKind::empty_instance, "discrete instance has no subsets");
  if (inst.subsets.size() > kMaxSets) fail(ErrorKind::instance_too_large, "too many subsets");
  if (inst.demands.size() != inst.subsets.size()) fail(ErrorKind::invalid_instance, "one demand per subset required");
  std::set<ElementId> ground(inst.ground.begin(), inst.ground.end());
  if (ground.size() != inst.ground.size()) fail(ErrorKind::invalid_instance, "ground set has duplicate elements");
  for (std::size_t k = 0; k < inst.n(); ++k) {
    if (inst.demands[k] < 1) {
      fail(ErrorKind::nonpositive_demand, "demand d_" + std::to_string(k + 1) + " must be >= 1");
    }
    for (auto e : inst.subsets[k]) {
      if (!ground.contains(e)) {
        fail(ErrorKind::invalid_instance, "element " + std::to_string(e) + " of subset " + std::to_string(k + 1) + " is not in the ground set");
      }
    }
  }
}

/// |∪_{i∈I} A_i| by direct counting.
inline std::int64_t union_size(const DiscreteInstance& inst, SubsetMask i_set) {
  std::set<ElementId> u;
  for (auto k : i_set.indices()) u.insert(inst.subsets[k].begin(), inst.subsets[k].end());
  return static_cast<std::int64_t>(u.size());
}

inline std::int64_t demand_sum(const DiscreteInstance& inst, SubsetMask i_set) {
  std::int64_t total = 0;
  for (auto k : i_set.indices()) total += inst.demands[k];
  return total;
}

namespace detail {

// source -> k (unit·d_k), k -> e (unit) for e ∈ A_k, e -> sink (unit); elements
// are visited in ground order so the returned D_k are reproducible.
template <typename Cap>
DiscreteSolution solve_with_unit(const DiscreteInstance& inst, const Cap& unit) {
  validate(inst);
  const std::size_t n = inst.n();
  const std::size_t m = inst.ground.size();
  MaxFlow<Cap> g(2 + n + m);
  auto demand_node = [](std::size_t k) { return 2 + k; };
  auto element_node = [n](std::size_t i) { return 2 + n + i; };
  std::vector<std::size_t> position(m);
  Cap total{};
  for (std::size_t k = 0; k < n; ++k) {
    Cap d = unit * Cap(inst.demands[k]);
    total += d;
    g.add_edge(0, demand_node(k), d);
  }
  struct Link {
    std::size_t k, i, edge;
  };
  std::vector<Link> links;
  for (std::size_t k = 0; k < n; ++k) {
    std::set<ElementId> members(inst.subsets[k].begin(), inst.subsets[k].end());
    for (std::size_t i = 0; i < m; ++i) {
      if (members.contains(inst.ground[i])) links.push_back({k, i, g.add_edge(demand_node(k), element_node(i), unit)});
    }
  }
  for (std::size_t i = 0; i < m; ++i) g.add_edge(element_node(i), 1, unit);

  DiscreteSolution out;
  Cap value = g.run(0, 1);
  if (value == total) {
    out.parts.resize(n);
    for (const auto& l : links) {
      if (g.flow(l.edge) == unit) out.parts[l.k].push_back(inst.ground[l.i]);
    }
    return out;
  }
  auto side = g.source_side(0);
  std::uint32_t bits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (side[demand_node(k)]) bits |= std::uint32_t{1} << k;
  }
  SubsetMask i_set(bits);
  ensure(!i_set.empty() && union_size(inst, i_set) < demand_sum(inst, i_set),
         "discrete min cut did not yield a violating index set");
  out.violating = i_set;
  return out;
}

}  // namespace detail

/// Disjoint D_k ⊆ A_k with |D_k| = d_k, or an index set I with |∪A_I| < Σ_I d_i.
inline DiscreteSolution solve_discrete(const DiscreteInstance& inst) {
  return detail::solve_with_unit<std::int64_t>(inst, 1);
}

struct ScaledSolution {
  DiscreteSolution solution;
  Rational xi;
  std::vector<Rational> eta;  // η(D_k) = ξ|D_k|
};

/// Same problem under the counting measure η(X) = ξ|X|; the flow is run on
/// ξ-scaled capacities and must reproduce solve_discrete exactly.
inline ScaledSolution solve_scaled(const DiscreteInstance& inst, const Rational& xi) {
  if (xi.sign() <= 0) fail(ErrorKind::nonpositive_scale, "xi must be positive, got " + xi.str());
  ScaledSolution out{detail::solve_with_unit<Rational>(inst, xi), xi, {}};
  ensure(out.solution == solve_discrete(inst), "scaled solve diverged from the unscaled solve");
  for (const auto& part : out.solution.parts) out.eta.push_back(xi * Rational(static_cast<long long>(part.size())));
  return out;
}

struct BlockSolution {
  std::vector<std::vector<std::size_t>> chosen;  // D_k as block indices
  std::vector<Rational> measures;                // ν(∪ chosen blocks) = ξ d_k
  std::optional<SubsetMask> violating;
  Rational xi;

  bool feasible() const { return !violating.has_value(); }
};

/// Disjoint equal-measure blocks, collections α_k of block indices and
/// cardinality demands: reduces to solve_discrete on block indices.
inline BlockSolution solve_blocks(std::span<const IntervalSet> blocks,
                                  const std::vector<std::vector<std::size_t>>& collections,
                                  const std::vector<std::int64_t>& demands) {
  BlockSolution out;
  if (!blocks.empty()) out.xi = blocks.front().measure();
  Rational sum;
  IntervalSet all;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].measure() != out.xi) {
      fail(ErrorKind::block_measure_mismatch,
           "block " + std::to_string(b) + " has measure " + blocks[b].measure().str() + ", expected " + out.xi.str());
    }
    sum += out.xi;
    all = set_union(all, blocks[b]);
  }
  if (all.measure() != sum) fail(ErrorKind::block_overlap, "blocks are not pairwise disjoint");

  DiscreteInstance inst;
  for (std::size_t b = 0; b < blocks.size(); ++b) inst.ground.push_back(static_cast<ElementId>(b));
  for (const auto& alpha : collections) {
    auto& sub = inst.subsets.emplace_back();
    for (auto b : alpha) {
      if (b >= blocks.size()) fail(ErrorKind::invalid_instance, "block index " + std::to_string(b) + " out of range");
      sub.push_back(static_cast<ElementId>(b));
    }
  }
  inst.demands = demands;
  DiscreteSolution sol = solve_discrete(inst);
  out.violating = sol.violating;
  if (sol.feasible()) {
    for (const auto& part : sol.parts) {
      auto& c = out.chosen.emplace_back();
      IntervalSet region;
      for (auto e : part) {
        c.push_back(static_cast<std::size_t>(e));
        region = set_union(region, blocks[static_cast<std::size_t>(e)]);
      }
      out.measures.push_back(region.measure());
      ensure(out.measures.back() == out.xi * Rational(static_cast<long long>(c.size())), "chosen blocks overlap");
    }
  }
  return out;
}

struct ClassSolution {
  std::vector<std::vector<std::int64_t>> take;  // take[k][c]
  std::optional<SubsetMask> violating;

  bool feasible() const { return !violating.has_value(); }
};

/// solve_blocks with interchangeable blocks merged: class c holds counts[c]
/// identical blocks, α_k is a set of classes, and the answer is how many blocks
/// of each class go to each k. Same flow problem with equal nodes collapsed.
/// link_caps, when given, bounds take[k][c] from above.
inline ClassSolution solve_block_classes(const std::vector<std::int64_t>& counts,
                                         const std::vector<std::vector<std::size_t>>& collections,
                                         const std::vector<std::int64_t>& demands,
                                         const std::vector<std::vector<std::int64_t>>* link_caps = nullptr) {
  const std::size_t n = collections.size();
  if (demands.size() != n) fail(ErrorKind::invalid_instance, "one demand per collection required");
  MaxFlow<std::int64_t> g(2 + n + counts.size());
  std::int64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (demands[k] < 0) fail(ErrorKind::nonpositive_demand, "negative class demand");
    total += demands[k];
    g.add_edge(0, 2 + k, demands[k]);
  }
  struct Link {
    std::size_t k, c, edge;
  };
  std::vector<Link> links;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> alpha = collections[k];
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    for (auto c : alpha) {
      if (c >= counts.size()) fail(ErrorKind::invalid_instance, "class index out of range");
      std::int64_t cap = link_caps ? std::min(total, (*link_caps).at(k).at(c)) : total;
      links.push_back({k, c, g.add_edge(2 + k, 2 + n + c, cap)});
    }
  }
  for (std::size_t c = 0; c < counts.size(); ++c) g.add_edge(2 + n + c, 1, counts[c]);

  ClassSolution out;
  if (g.run(0, 1) == total) {
    out.take.assign(n, std::vector<std::int64_t>(counts.size(), 0));
    for (const auto& l : links) out.take[l.k][l.c] = g.flow(l.edge);
    return out;
  }
  auto side = g.source_side(0);
  std::uint32_t bits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (side[2 + k]) bits |= std::uint32_t{1} << k;
  }
  out.violating = SubsetMask(bits);
  return out;
}

}  // namespace bvmatch
