#pragma once

#include <vector>

#include "bvmatch/instance.hpp"
#include "bvmatch/max_flow.hpp"
#include "bvmatch/venn_atoms.hpp"

namespace bvmatch {

/// Atom-demand network: source -> demand k (m_k), demand k -> atom Q for k ∈ Q
/// (Σ m, standing in for an unbounded capacity), atom Q -> sink (ν(S_Q)).
/// Node order: source, sink, demands by index, atoms by mask.
class FlowNetwork {
 public:
  struct Link {
    std::size_t demand;
    std::size_t atom;  // position in the atom table
    std::size_t edge;
  };

  static constexpr std::size_t kSource = 0;
  static constexpr std::size_t kSink = 1;

  FlowNetwork(const Instance& inst, const AtomTable& table) : graph_(2) {
    if (table.n() != inst.n()) fail(ErrorKind::instance_mismatch, "atom table was built for another instance");
    n_ = inst.n();
    atoms_ = table.atoms().size();
    for (std::size_t k = 0; k < n_; ++k) graph_.add_node();
    for (std::size_t j = 0; j < atoms_; ++j) graph_.add_node();
    const Rational unbounded = inst.total_demand();
    for (std::size_t k = 0; k < n_; ++k) source_edges_.push_back(graph_.add_edge(kSource, demand_node(k), inst.demands()[k]));
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t j = 0; j < atoms_; ++j) {
        if (table.atoms()[j].mask.contains(k)) links_.push_back({k, j, graph_.add_edge(demand_node(k), atom_node(j), unbounded)});
      }
    }
    for (std::size_t j = 0; j < atoms_; ++j) {
      sink_edges_.push_back(graph_.add_edge(atom_node(j), kSink, table.atoms()[j].region.measure()));
    }
  }

  std::size_t n() const { return n_; }
  std::size_t atom_count() const { return atoms_; }
  std::size_t demand_node(std::size_t k) const { return 2 + k; }
  std::size_t atom_node(std::size_t j) const { return 2 + n_ + j; }
  std::size_t node_count() const { return graph_.node_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }
  const std::vector<Link>& links() const { return links_; }
  const MaxFlow<Rational>& graph() const { return graph_; }

 private:
  std::size_t n_ = 0;
  std::size_t atoms_ = 0;
  MaxFlow<Rational> graph_;
  std::vector<std::size_t> source_edges_;
  std::vector<std::size_t> sink_edges_;
  std::vector<Link> links_;
};

inline FlowNetwork build_network(const Instance& inst, const AtomTable& table) { return FlowNetwork(inst, table); }

struct LinkFlow {
  std::size_t demand;
  std::size_t atom;
  Rational flow;
};

struct FlowSolution {
  Rational value;
  std::vector<LinkFlow> links;         // f(k, Q) for every demand-atom edge, network order
  std::vector<bool> demand_on_source;  // demand k on the source side of the min cut
};

inline FlowSolution max_flow(const FlowNetwork& net) {
  MaxFlow<Rational> g = net.graph();
  FlowSolution out;
  out.value = g.run(FlowNetwork::kSource, FlowNetwork::kSink);
  out.links.reserve(net.links().size());
  for (const auto& l : net.links()) out.links.push_back({l.demand, l.atom, g.flow(l.edge)});
  auto side = g.source_side(FlowNetwork::kSource);
  for (std::size_t k = 0; k < net.n(); ++k) out.demand_on_source.push_back(side[net.demand_node(k)]);
  return out;
}

/// Reads I off the min cut of a flow that fell short of Σ m_k. The cut identity
/// value = Σ_{k∉I} m_k + ν(N(I)) forces ν(∪_{i∈I} A_i) < Σ_{i∈I} m_i.
inline ViolatingSet min_cut_violation(const Instance& inst, const AtomTable& table, const FlowSolution& sol) {
  std::uint32_t bits = 0;
  for (std::size_t k = 0; k < inst.n(); ++k) {
    if (sol.demand_on_source[k]) bits |= std::uint32_t{1} << k;
  }
  SubsetMask i_set(bits);
  ensure(!i_set.empty(), "max flow below total demand but min cut has no demand on the source side");
  ViolatingSet v{i_set, union_measure(table, i_set), inst.demand_sum(i_set)};
  ensure(v.lhs < v.rhs, "min-cut index set " + i_set.str() + " does not violate the condition");
  return v;
}

}  // namespace bvmatch
