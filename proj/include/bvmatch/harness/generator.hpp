#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "bvmatch/instance.hpp"

namespace bvmatch::harness {

enum class GenMode { feasible, infeasible, boundary };

inline GenMode parse_mode(std::string_view s) {
  if (s == "feasible") return GenMode::feasible;
  if (s == "infeasible") return GenMode::infeasible;
  if (s == "boundary") return GenMode::boundary;
  fail(ErrorKind::parse_error, "unknown mode '" + std::string(s) + "' (feasible|infeasible|boundary)");
}

inline constexpr std::string_view to_string(GenMode m) {
  switch (m) {
    case GenMode::feasible: return "feasible";
    case GenMode::infeasible: return "infeasible";
    case GenMode::boundary: return "boundary";
  }
  return "";
}

inline constexpr std::int64_t kMaxGeneratorDenominator = std::int64_t{1} << 30;

struct Generated {
  Instance instance;
  GenMode mode;
  std::optional<SubsetMask> planted;  // violated mask (infeasible) or tight mask (boundary)
};

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::uint32_t nonempty_mask(std::size_t n) {
    return static_cast<std::uint32_t>(uniform(1, (std::int64_t{1} << n) - 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng_);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Plants a disjoint allocation and grows the A_k around it, so feasibility
/// (or the violated / tight mask) is known by construction. Endpoints are
/// a/q with q <= denom_cap.
inline Generated generate(std::uint64_t seed, std::size_t n, GenMode mode, std::int64_t denom_cap = 64) {
  if (n == 0) fail(ErrorKind::empty_instance, "n must be >= 1");
  if (n > kMaxSets) fail(ErrorKind::instance_too_large, "n exceeds cap " + std::to_string(kMaxSets));
  if (denom_cap < 1 || denom_cap > kMaxGeneratorDenominator) {
    fail(ErrorKind::invalid_instance, "denominator cap must lie in [1, 2^30]");
  }
  detail::Sampler rng(seed);
  const auto length = rng.uniform(static_cast<std::int64_t>(n), 2 * static_cast<std::int64_t>(n) + 2);

  std::vector<Rational> cuts{Rational(0), Rational(length)};
  const auto extra = rng.uniform(2 * static_cast<std::int64_t>(n) + 2, 6 * static_cast<std::int64_t>(n) + 6);
  for (std::int64_t i = 0; i < extra; ++i) {
    auto q = rng.uniform(1, denom_cap);
    cuts.emplace_back(rng.uniform(1, length * q - 1 > 0 ? length * q - 1 : 1), q);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Interval> cells;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) cells.emplace_back(cuts[c], cuts[c + 1]);

  // owner[c] = k when cell c is planted into B_k, n when unowned
  std::vector<std::size_t> order(cells.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  rng.shuffle(order);
  std::vector<std::size_t> owner(cells.size(), n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < n) owner[order[i]] = i;
    else if (rng.coin(0.6)) owner[order[i]] = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
  }

  std::uint32_t tight = mode == GenMode::boundary ? rng.nonempty_mask(n) : 0;
  std::vector<std::vector<Interval>> a_parts(n);
  std::vector<Rational> planted(n);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (owner[c] < n) {
      a_parts[owner[c]].push_back(cells[c]);
      planted[owner[c]] += cells[c].length();
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const bool in_tight = (tight >> k) & 1U;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (owner[c] == k) continue;
      // tight sets may only borrow from other tight sets' planted cells
      if (in_tight && !(owner[c] < n && ((tight >> owner[c]) & 1U))) continue;
      if (rng.coin(0.25)) a_parts[k].push_back(cells[c]);
    }
  }

  std::vector<Rational> demands(n);
  for (std::size_t k = 0; k < n; ++k) {
    demands[k] = planted[k];
    if (!((tight >> k) & 1U) && rng.coin(0.5)) {
      auto q = rng.uniform(1, denom_cap);
      demands[k] *= Rational(rng.uniform(1, q), q);
    }
  }
  std::vector<IntervalSet> subsets;
  for (auto& p : a_parts) subsets.emplace_back(std::move(p));

  std::optional<SubsetMask> mask;
  if (mode == GenMode::infeasible) {
    SubsetMask i_set(rng.nonempty_mask(n));
    IntervalSet u;
    Rational rhs;
    for (auto k : i_set.indices()) {
      u = set_union(u, subsets[k]);
      rhs += demands[k];
    }
    auto idx = i_set.indices();
    auto k = idx[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(idx.size()) - 1))];
    demands[k] += (u.measure() - rhs) + Rational(1, rng.uniform(1, denom_cap));
    mask = i_set;
  } else if (mode == GenMode::boundary) {
    mask = SubsetMask(tight);
  }
  return {Instance(MeasureSpace(IntervalSet::single(0, length)), std::move(subsets), std::move(demands)), mode, mask};
}

}  // namespace bvmatch::harness
