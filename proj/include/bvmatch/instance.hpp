#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvmatch/interval_set.hpp"
#include "bvmatch/subset_mask.hpp"

namespace bvmatch {

/// Sets A_1..A_n inside a measure space with positive demands m_1..m_n.
class Instance {
 public:
  Instance(MeasureSpace space, std::vector<IntervalSet> subsets, std::vector<Rational> demands,
           std::vector<std::string> names = {})
      : space_(std::move(space)),
        subsets_(std::move(subsets)),
        demands_(std::move(demands)),
        names_(std::move(names)) {
    if (subsets_.empty()) fail(ErrorKind::empty_instance, "instance has no sets");
    if (subsets_.size() > kMaxSets) {
      fail(ErrorKind::instance_too_large,
           "n=" + std::to_string(subsets_.size()) + " exceeds cap " + std::to_string(kMaxSets));
    }
    if (demands_.size() != subsets_.size()) {
      fail(ErrorKind::invalid_instance, std::to_string(subsets_.size()) + " sets but " +
                                            std::to_string(demands_.size()) + " demands");
    }
    if (names_.empty()) {
      for (std::size_t k = 0; k < subsets_.size(); ++k) names_.push_back("A" + std::to_string(k + 1));
    }
    if (names_.size() != subsets_.size()) fail(ErrorKind::invalid_instance, "one name per set required");
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      if (!space_.contains(subsets_[k])) {
        fail(ErrorKind::invalid_instance, names_[k] + " is not contained in the universe");
      }
      if (demands_[k].sign() <= 0) {
        fail(ErrorKind::nonpositive_demand, "demand for " + names_[k] + " is " + demands_[k].str() + ", must be > 0");
      }
    }
  }

  const MeasureSpace& space() const { return space_; }
  const IntervalSet& universe() const { return space_.universe(); }
  const std::vector<IntervalSet>& subsets() const { return subsets_; }
  const std::vector<Rational>& demands() const { return demands_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t n() const { return subsets_.size(); }

  Rational total_demand() const {
    Rational total;
    for (const auto& m : demands_) total += m;
    return total;
  }

  Rational demand_sum(SubsetMask i_set) const {
    Rational total;
    for (auto k : i_set.indices()) total += demands_[k];
    return total;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.universe() == b.universe() && a.subsets_ == b.subsets_ && a.demands_ == b.demands_ &&
           a.names_ == b.names_;
  }

 private:
  MeasureSpace space_;
  std::vector<IntervalSet> subsets_;
  std::vector<Rational> demands_;
  std::vector<std::string> names_;
};

/// Result of dropping zero demands: the reduced instance plus, for each of its
/// sets, the index it had in the input.
struct ReducedInstance {
  std::optional<Instance> instance;  // empty when every demand was zero
  std::vector<std::size_t> original_index;
};

/// Demands of exactly 0 are trivially met by B_k = ∅; this removes them so the
/// remaining instance satisfies the strict positivity requirement.
inline ReducedInstance drop_zero_demands(const MeasureSpace& space, const std::vector<IntervalSet>& subsets,
                                         const std::vector<Rational>& demands,
                                         const std::vector<std::string>& names = {}) {
  ReducedInstance out;
  std::vector<IntervalSet> kept_sets;
  std::vector<Rational> kept_demands;
  std::vector<std::string> kept_names;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if (demands.at(k).is_zero()) continue;
    kept_sets.push_back(subsets[k]);
    kept_demands.push_back(demands[k]);
    kept_names.push_back(names.empty() ? "A" + std::to_string(k + 1) : names[k]);
    out.original_index.push_back(k);
  }
  if (!kept_sets.empty()) out.instance.emplace(space, std::move(kept_sets), std::move(kept_demands), std::move(kept_names));
  return out;
}

/// An index set I with ν(∪_{i∈I} A_i) = lhs < rhs = Σ_{i∈I} m_i.
struct ViolatingSet {
  SubsetMask i_set;
  Rational lhs;
  Rational rhs;

  Rational deficit() const { return rhs - lhs; }
  friend bool operator==(const ViolatingSet&, const ViolatingSet&) = default;
};

/// Either Feasible or a violating index set.
struct Certificate {
  std::optional<ViolatingSet> violation;

  bool feasible() const { return !violation.has_value(); }
  static Certificate make_feasible() { return {}; }
  static Certificate violated(ViolatingSet v) { return {std::move(v)}; }
};

}  // namespace bvmatch
