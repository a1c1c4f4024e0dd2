#include <gtest/gtest.h>

#include <random>

#include "bvmatch/allocator.hpp"
#include "bvmatch/hall.hpp"
#include "bvmatch/harness/validate.hpp"
#include "test_support.hpp"

namespace bvmatch {
namespace {

using testing::I;
using testing::R;

Instance make(std::vector<IntervalSet> sets, std::vector<Rational> demands) {
  return Instance(MeasureSpace(I({{"0", "4"}})), std::move(sets), std::move(demands));
}

TEST(BuildNetworkTest, StructuralCounts) {
  auto one = make({I({{"0", "1"}})}, {R("1/2")});
  auto net = build_network(one, atomize(one.subsets()));
  EXPECT_EQ(net.atom_count(), 1u);
  EXPECT_EQ(net.node_count(), 4u);  // source, sink, 1 demand, 1 atom
  EXPECT_EQ(net.edge_count(), 3u);

  auto two = make({I({{"0", "2"}}), I({{"1", "3"}})}, {R("1"), R("1")});
  auto table = atomize(two.subsets());
  auto net2 = build_network(two, table);
  EXPECT_EQ(net2.node_count(), 2u + 2u + 3u);
  for (const auto& l : net2.links()) EXPECT_TRUE(table.atoms()[l.atom].mask.contains(l.demand));
  EXPECT_EQ(net2.links().size(), 4u);  // k=1: {1},{1,2}; k=2: {2},{1,2}
  // demand-major link order
  EXPECT_EQ(net2.links()[0].demand, 0u);
  EXPECT_EQ(net2.links()[3].demand, 1u);
}

TEST(BuildNetworkTest, EmptyAtomAbsent) {
  auto inst = make({I({{"0", "1"}}), I({{"0", "1"}})}, {R("1/2"), R("1/2")});
  auto net = build_network(inst, atomize(inst.subsets()));
  EXPECT_EQ(net.atom_count(), 1u);
}

TEST(MaxFlowTest, SinglePathBottleneck) {
  MaxFlow<Rational> g(4);
  g.add_edge(0, 2, R("1/2"));
  g.add_edge(2, 3, R("3/2"));
  g.add_edge(3, 1, R("1"));
  EXPECT_EQ(g.run(0, 1), R("1/2"));
}

TEST(MaxFlowTest, IdenticalSetsShortfall) {
  // cut with both demands on the source side has value ν([0,1)) = 1
  auto inst = make({I({{"0", "1"}}), I({{"0", "1"}})}, {R("3/5"), R("3/5")});
  auto sol = max_flow(build_network(inst, atomize(inst.subsets())));
  EXPECT_EQ(sol.value, R("1"));
  EXPECT_TRUE(sol.demand_on_source[0] && sol.demand_on_source[1]);
}

// Brute-force min cut: min over I of Σ_{k∉I} m_k + ν(∪_{i∈I} A_i), I = ∅ included.
Rational min_cut_by_enumeration(const Instance& inst) {
  Rational best = inst.total_demand();
  for (std::uint32_t bits = 1; bits < (1U << inst.n()); ++bits) {
    IntervalSet u;
    Rational outside;
    for (std::size_t k = 0; k < inst.n(); ++k) {
      if ((bits >> k) & 1U) u = set_union(u, inst.subsets()[k]);
      else outside += inst.demands()[k];
    }
    best = std::min(best, outside + u.measure());
  }
  return best;
}

TEST(MaxFlowProperty, FlowEqualsMinCutAndConserves) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = testing::random_instance(rng, 1 + trial % 8);
    auto table = atomize(inst.subsets());
    auto sol = max_flow(build_network(inst, table));
    ASSERT_EQ(sol.value, min_cut_by_enumeration(inst)) << trial;
    Rational sum;
    std::vector<Rational> per_demand(inst.n()), per_atom(table.atoms().size());
    for (const auto& l : sol.links) {
      ASSERT_GE(l.flow.sign(), 0);
      sum += l.flow;
      per_demand[l.demand] += l.flow;
      per_atom[l.atom] += l.flow;
    }
    EXPECT_EQ(sum, sol.value);
    for (std::size_t k = 0; k < inst.n(); ++k) EXPECT_LE(per_demand[k], inst.demands()[k]);
    for (std::size_t j = 0; j < per_atom.size(); ++j) EXPECT_LE(per_atom[j], table.atoms()[j].region.measure());
    if (sol.value == inst.total_demand()) {
      for (std::size_t k = 0; k < inst.n(); ++k) EXPECT_EQ(per_demand[k], inst.demands()[k]);
    }
  }
}

TEST(AllocateExactTest, SingleSetLeftmost) {
  auto res = allocate_exact(make({I({{"0", "1"}})}, {R("1/2")}));
  ASSERT_TRUE(std::holds_alternative<Allocation>(res));
  EXPECT_EQ(std::get<Allocation>(res).parts[0], I({{"0", "1/2"}}));
}

TEST(AllocateExactTest, OverlapIsValid) {
  auto inst = make({I({{"0", "2"}}), I({{"1", "3"}})}, {R("3/2"), R("3/2")});
  auto res = allocate_exact(inst);
  ASSERT_TRUE(std::holds_alternative<Allocation>(res));
  EXPECT_TRUE(harness::validate(inst, std::get<Allocation>(res).parts).pass());
}

TEST(AllocateExactTest, HalvesOfUnit) {
  auto inst = make({I({{"0", "1"}}), I({{"0", "1"}})}, {R("1/2"), R("1/2")});
  auto parts = std::get<Allocation>(allocate_exact(inst)).parts;
  EXPECT_TRUE(harness::validate(inst, parts).pass());
  EXPECT_EQ(set_union(parts[0], parts[1]), I({{"0", "1"}}));
}

TEST(AllocateExactTest, InfeasibleGivesCertificate) {
  auto res = allocate_exact(make({I({{"0", "1"}}), I({{"0", "1"}})}, {R("3/5"), R("3/5")}));
  ASSERT_TRUE(std::holds_alternative<ViolatingSet>(res));
  const auto& v = std::get<ViolatingSet>(res);
  EXPECT_EQ(v.i_set, SubsetMask(0b11));
  EXPECT_EQ(v.lhs, R("1"));
  EXPECT_EQ(v.rhs, R("6/5"));
}

TEST(AllocateExactProperty, IffWithExhaustiveCheck) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = testing::random_instance(rng, 1 + trial % 8);
    auto res = allocate_exact(inst);
    bool feasible = check_exhaustive(inst).feasible();
    ASSERT_EQ(std::holds_alternative<Allocation>(res), feasible) << trial;
    if (feasible) {
      auto rep = harness::validate(inst, std::get<Allocation>(res).parts);
      EXPECT_TRUE(rep.pass()) << (rep.pass() ? "" : rep.failures.front());
    }
  }
}

}  // namespace
}  // namespace bvmatch
