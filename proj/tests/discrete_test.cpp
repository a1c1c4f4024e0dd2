#include <gtest/gtest.h>

#include <random>

#include "bvmatch/discrete.hpp"
#include "discrete_oracle.hpp"
#include "test_support.hpp"

namespace bvmatch {
namespace {

using testing::I;
using testing::R;

TEST(SolveDiscreteTest, TwoOverlappingSubsets) {
  DiscreteInstance inst{{1, 2, 3}, {{1, 2}, {2, 3}}, {1, 2}};
  // brute force: D_2 must be {2,3}, leaving D_1 = {1}
  auto all = testing::brute_force_solutions(inst);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], (std::vector<std::vector<ElementId>>{{1}, {2, 3}}));
  auto sol = solve_discrete(inst);
  ASSERT_TRUE(sol.feasible());
  EXPECT_EQ(sol.parts, all[0]);
}

TEST(SolveDiscreteTest, OneElementTwoDemands) {
  DiscreteInstance inst{{1}, {{1}, {1}}, {1, 1}};
  auto sol = solve_discrete(inst);
  ASSERT_FALSE(sol.feasible());
  EXPECT_EQ(*sol.violating, SubsetMask(0b11));
}

TEST(SolveDiscreteTest, ForcedSingleton) {
  auto sol = solve_discrete(DiscreteInstance{{1}, {{1}}, {1}});
  ASSERT_TRUE(sol.feasible());
  EXPECT_EQ(sol.parts, (std::vector<std::vector<ElementId>>{{1}}));
}

TEST(SolveDiscreteTest, Validation) {
  EXPECT_THROW(solve_discrete(DiscreteInstance{{1}, {{2}}, {1}}), Error);
  EXPECT_THROW(solve_discrete(DiscreteInstance{{1}, {{1}}, {0}}), Error);
  EXPECT_THROW(solve_discrete(DiscreteInstance{{1, 1}, {{1}}, {1}}), Error);
  EXPECT_THROW(solve_discrete(DiscreteInstance{{1}, {}, {}}), Error);
}

TEST(SolveDiscreteProperty, MatchesBruteForce) {
  std::mt19937_64 rng(51);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto inst = testing::random_discrete(rng);
    auto sol = solve_discrete(inst);
    ASSERT_EQ(sol.feasible(), testing::brute_force_feasible(inst)) << trial;
    if (sol.feasible()) {
      ++feasible;
      EXPECT_TRUE(testing::valid_discrete_solution(inst, sol));
    } else {
      EXPECT_LT(union_size(inst, *sol.violating), demand_sum(inst, *sol.violating));
    }
  }
  EXPECT_GT(feasible, 40);
  EXPECT_LT(feasible, 360);
}

TEST(SolveScaledTest, UnitScaleIsIdentity) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = testing::random_discrete(rng);
    EXPECT_EQ(solve_scaled(inst, R("1")).solution, solve_discrete(inst));
  }
}

TEST(SolveScaledTest, ScalingKeepsViolation) {
  auto out = solve_scaled(DiscreteInstance{{1}, {{1}, {1}}, {1, 1}}, R("1/4"));
  ASSERT_FALSE(out.solution.feasible());
  EXPECT_EQ(*out.solution.violating, SubsetMask(0b11));
}

TEST(SolveScaledTest, EtaMeasures) {
  auto out = solve_scaled(DiscreteInstance{{1, 2, 3}, {{1, 2}, {2, 3}}, {1, 2}}, R("7/5"));
  ASSERT_TRUE(out.solution.feasible());
  EXPECT_EQ(out.eta, (std::vector<Rational>{R("7/5"), R("14/5")}));
}

TEST(SolveScaledTest, RejectsNonpositiveScale) {
  DiscreteInstance inst{{1}, {{1}}, {1}};
  try {
    solve_scaled(inst, R("0"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::nonpositive_scale);
  }
  EXPECT_THROW(solve_scaled(inst, R("-1/2")), Error);
}

TEST(SolveScaledProperty, VerdictInvariantInScale) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = testing::random_discrete(rng);
    auto base = solve_discrete(inst);
    for (const char* xi : {"1/3", "2", "7/5"}) {
      auto s = solve_scaled(inst, R(xi));
      ASSERT_EQ(s.solution.feasible(), base.feasible());
      EXPECT_EQ(s.solution, base);
    }
  }
}

std::vector<IntervalSet> quarter_blocks() { return {I({{"0", "1/4"}}), I({{"1/4", "1/2"}}), I({{"1/2", "3/4"}})}; }

TEST(SolveBlocksTest, Example) {
  auto blocks = quarter_blocks();
  auto out = solve_blocks(blocks, {{0, 1}, {1, 2}}, {1, 2});
  ASSERT_TRUE(out.feasible());
  EXPECT_EQ(out.chosen, (std::vector<std::vector<std::size_t>>{{0}, {1, 2}}));
  EXPECT_EQ(out.measures, (std::vector<Rational>{R("1/4"), R("1/2")}));
  EXPECT_EQ(out.xi, R("1/4"));
}

TEST(SolveBlocksTest, OneBlockTwoDemands) {
  auto blocks = quarter_blocks();
  auto out = solve_blocks(blocks, {{0}, {0}}, {1, 1});
  ASSERT_FALSE(out.feasible());
  EXPECT_EQ(*out.violating, SubsetMask(0b11));
}

TEST(SolveBlocksTest, SaturatedDisjointCollections) {
  auto blocks = quarter_blocks();
  auto out = solve_blocks(blocks, {{0, 2}, {1}}, {2, 1});
  ASSERT_TRUE(out.feasible());
  EXPECT_EQ(out.chosen, (std::vector<std::vector<std::size_t>>{{0, 2}, {1}}));
}

TEST(SolveBlocksTest, Errors) {
  std::vector<IntervalSet> unequal{I({{"0", "1/4"}}), I({{"1/4", "1"}})};
  try {
    solve_blocks(unequal, {{0}}, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::block_measure_mismatch);
  }
  std::vector<IntervalSet> overlap{I({{"0", "1/2"}}), I({{"1/4", "3/4"}})};
  try {
    solve_blocks(overlap, {{0}}, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::block_overlap);
  }
}

TEST(SolveBlockClassesTest, AgreesWithExplicitBlocks) {
  std::mt19937_64 rng(54);
  std::uniform_int_distribution<std::int64_t> cnt(0, 3), dem(1, 4);
  std::bernoulli_distribution pick(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t classes = 1 + trial % 4, n = 1 + trial % 3;
    std::vector<std::int64_t> counts;
    std::vector<IntervalSet> blocks;
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      counts.push_back(cnt(rng));
      for (std::int64_t b = 0; b < counts.back(); ++b) {
        Rational lo(static_cast<long long>(blocks.size()), 3LL);
        members[c].push_back(blocks.size());
        blocks.push_back(IntervalSet::single(lo, lo + R("1/3")));
      }
    }
    std::vector<std::vector<std::size_t>> class_sets(n), block_sets(n);
    std::vector<std::int64_t> demands;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < classes; ++c) {
        if (!pick(rng)) continue;
        class_sets[k].push_back(c);
        block_sets[k].insert(block_sets[k].end(), members[c].begin(), members[c].end());
      }
      demands.push_back(dem(rng));
    }
    auto merged = solve_block_classes(counts, class_sets, demands);
    auto explicit_ = solve_blocks(blocks, block_sets, demands);
    ASSERT_EQ(merged.feasible(), explicit_.feasible()) << trial;
    if (merged.feasible()) {
      for (std::size_t c = 0; c < classes; ++c) {
        std::int64_t used = 0;
        for (std::size_t k = 0; k < n; ++k) used += merged.take[k][c];
        EXPECT_LE(used, counts[c]);
      }
      for (std::size_t k = 0; k < n; ++k) {
        std::int64_t got = 0;
        for (auto v : merged.take[k]) got += v;
        EXPECT_EQ(got, demands[k]);
      }
    }
  }
}

TEST(SolveBlockClassesTest, LinkCapsRestrictChoice) {
  // k=1 could use class 0 or 1; capping (1,0) at 0 forces class 1
  std::vector<std::vector<std::int64_t>> caps{{0, 5}, {5, 5}};
  auto out = solve_block_classes({2, 2}, {{0, 1}, {0}}, {2, 2}, &caps);
  ASSERT_TRUE(out.feasible());
  EXPECT_EQ(out.take[0], (std::vector<std::int64_t>{0, 2}));
  EXPECT_EQ(out.take[1], (std::vector<std::int64_t>{2, 0}));
}

}  // namespace
}  // namespace bvmatch
