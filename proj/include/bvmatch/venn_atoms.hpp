#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "bvmatch/interval_set.hpp"
#include "bvmatch/subset_mask.hpp"

namespace bvmatch {

struct Atom {
  SubsetMask mask;
  IntervalSet region;
};

/// Venn cells S_Q = (∩_{i∈Q} A_i) \ (∪_{i∉Q} A_i) for every nonempty Q with
/// positive measure, sorted by mask. Cells are pairwise disjoint and the cells
/// whose mask contains k recompose A_k exactly.
class AtomTable {
 public:
  AtomTable(std::size_t n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {}

  std::size_t n() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// S_Q, or the empty set when the cell was dropped.
  IntervalSet region(SubsetMask q) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), q,
                               [](const Atom& a, SubsetMask m) { return a.mask < m; });
    if (it != atoms_.end() && it->mask == q) return it->region;
    return {};
  }

 private:
  std::size_t n_;
  std::vector<Atom> atoms_;
};

/// Sweeps the elementary cells between consecutive endpoints of all sets and
/// groups them by membership mask.
inline AtomTable atomize(std::span<const IntervalSet> sets) {
  const std::size_t n = sets.size();
  if (n == 0) fail(ErrorKind::empty_instance, "atomize needs at least one set");
  if (n > kMaxSets) {
    fail(ErrorKind::instance_too_large, "n=" + std::to_string(n) + " exceeds cap " + std::to_string(kMaxSets));
  }
  std::vector<Rational> cuts;
  for (const auto& s : sets) {
    auto e = s.endpoints();
    cuts.insert(cuts.end(), e.begin(), e.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::map<std::uint32_t, std::vector<Interval>> cells;
  std::vector<std::size_t> cursor(n, 0);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational& lo = cuts[c];
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& parts = sets[k].parts();
      auto& j = cursor[k];
      while (j < parts.size() && parts[j].hi <= lo) ++j;
      // Cells never straddle an endpoint, so testing the left end suffices.
      if (j < parts.size() && parts[j].lo <= lo) bits |= std::uint32_t{1} << k;
    }
    if (bits != 0) cells[bits].emplace_back(lo, cuts[c + 1]);
  }

  std::vector<Atom> atoms;
  atoms.reserve(cells.size());
  for (auto& [bits, parts] : cells) atoms.push_back({SubsetMask(bits), IntervalSet(std::move(parts))});
  return AtomTable(n, std::move(atoms));
}

/// ν(∪_{i∈I} A_i) summed over the cells that meet I.
inline Rational union_measure(const AtomTable& table, SubsetMask i_set) {
  check_mask(i_set, table.n());
  Rational total;
  for (const auto& atom : table.atoms()) {
    if (atom.mask.meets(i_set)) total += atom.region.measure();
  }
  return total;
}

}  // namespace bvmatch
