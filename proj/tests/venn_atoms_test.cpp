#include <gtest/gtest.h>

#include <random>

#include "bvmatch/venn_atoms.hpp"
#include "test_support.hpp"

namespace bvmatch {
namespace {

using testing::I;
using testing::R;

// Literal cell formula through set algebra, the independent route.
IntervalSet cell_by_formula(const std::vector<IntervalSet>& sets, SubsetMask q) {
  IntervalSet inter, rest;
  bool first = true;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (q.contains(k)) {
      inter = first ? sets[k] : set_intersect(inter, sets[k]);
      first = false;
    } else {
      rest = set_union(rest, sets[k]);
    }
  }
  return set_difference(inter, rest);
}

TEST(AtomizeTest, TwoOverlappingIntervals) {
  std::vector<IntervalSet> sets{I({{"0", "2"}}), I({{"1", "3"}})};
  auto t = atomize(sets);
  EXPECT_EQ(t.region(SubsetMask(0b01)), I({{"0", "1"}}));
  EXPECT_EQ(t.region(SubsetMask(0b10)), I({{"2", "3"}}));
  EXPECT_EQ(t.region(SubsetMask(0b11)), I({{"1", "2"}}));
  EXPECT_EQ(t.atoms().size(), 3u);
}

TEST(AtomizeTest, IdenticalSetsDropEmptyCells) {
  std::vector<IntervalSet> sets{I({{"0", "1"}}), I({{"0", "1"}})};
  auto t = atomize(sets);
  ASSERT_EQ(t.atoms().size(), 1u);
  EXPECT_EQ(t.atoms()[0].mask, SubsetMask(0b11));
  EXPECT_EQ(t.atoms()[0].region, I({{"0", "1"}}));
  EXPECT_TRUE(t.region(SubsetMask(0b01)).empty());
  EXPECT_TRUE(t.region(SubsetMask(0b10)).empty());
}

TEST(AtomizeTest, EmptyInstanceRejected) {
  std::vector<IntervalSet> none;
  try {
    atomize(none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_instance);
  }
  std::vector<IntervalSet> too_many(kMaxSets + 1, I({{"0", "1"}}));
  EXPECT_THROW(atomize(too_many), Error);
}

TEST(AtomizeProperty, MatchesFormulaAndPointwiseMembership) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::vector<IntervalSet> sets;
    std::vector<Rational> pts;
    for (std::size_t k = 0; k < n; ++k) {
      sets.push_back(testing::random_set(rng, 8, 3, 4));
      auto e = sets.back().endpoints();
      pts.insert(pts.end(), e.begin(), e.end());
    }
    auto t = atomize(sets);
    EXPECT_LE(t.atoms().size(), (std::size_t{1} << n) - 1);
    auto probes = testing::probe_points(pts);
    for (std::uint32_t bits = 1; bits < (1U << n); ++bits) {
      SubsetMask q(bits);
      auto cell = t.region(q);
      ASSERT_EQ(cell, cell_by_formula(sets, q)) << q.str();
      for (const auto& p : probes) {
        std::uint32_t member = 0;
        for (std::size_t k = 0; k < n; ++k) member |= sets[k].contains(p) ? (1U << k) : 0U;
        ASSERT_EQ(cell.contains(p), member == bits);
      }
    }
    // pairwise disjoint
    for (std::size_t a = 0; a < t.atoms().size(); ++a) {
      for (std::size_t b = a + 1; b < t.atoms().size(); ++b) {
        ASSERT_TRUE(are_disjoint(t.atoms()[a].region, t.atoms()[b].region));
      }
    }
    // recomposition of each A_k and of the union
    IntervalSet all_atoms, all_sets;
    for (std::size_t k = 0; k < n; ++k) {
      IntervalSet rebuilt;
      for (const auto& atom : t.atoms()) {
        if (atom.mask.contains(k)) rebuilt = set_union(rebuilt, atom.region);
      }
      ASSERT_EQ(rebuilt, sets[k]);
      all_sets = set_union(all_sets, sets[k]);
    }
    for (const auto& atom : t.atoms()) all_atoms = set_union(all_atoms, atom.region);
    EXPECT_EQ(all_atoms, all_sets);
  }
}

TEST(UnionMeasureTest, Examples) {
  std::vector<IntervalSet> sets{I({{"0", "2"}}), I({{"1", "3"}})};
  auto t = atomize(sets);
  EXPECT_EQ(union_measure(t, SubsetMask(0b01)), R("2"));
  EXPECT_EQ(union_measure(t, SubsetMask(0b11)), R("3"));
  try {
    union_measure(t, SubsetMask(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_subset);
  }
}

TEST(UnionMeasureProperty, AgreesWithDirectUnion) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::vector<IntervalSet> sets;
    for (std::size_t k = 0; k < n; ++k) sets.push_back(testing::random_set(rng, 8, 3, 4));
    auto t = atomize(sets);
    for (std::uint32_t bits = 1; bits < (1U << n); ++bits) {
      IntervalSet u;
      for (std::size_t k = 0; k < n; ++k) {
        if ((bits >> k) & 1U) u = set_union(u, sets[k]);
      }
      ASSERT_EQ(union_measure(t, SubsetMask(bits)), u.measure());
    }
  }
}

}  // namespace
}  // namespace bvmatch
