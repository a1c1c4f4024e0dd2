#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "bvmatch/error.hpp"

namespace bvmatch {

inline constexpr std::size_t kMaxSets = 16;
inline constexpr std::size_t kMaxExhaustiveSets = 8;

/// Nonempty subset of the index set {0, ..., n-1}; bit k stands for A_{k+1}.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

  static SubsetMask from_indices(const std::vector<std::size_t>& indices) {
    std::uint32_t bits = 0;
    for (auto k : indices) bits |= std::uint32_t{1} << k;
    return SubsetMask(bits);
  }

  static constexpr SubsetMask full(std::size_t n) {
    return SubsetMask(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool contains(std::size_t k) const { return (bits_ >> k) & 1U; }
  constexpr bool meets(SubsetMask o) const { return (bits_ & o.bits_) != 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < 32; ++k) {
      if (contains(k)) out.push_back(k);
    }
    return out;
  }

  /// One-based display form, e.g. "{1,2}".
  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (auto k : indices()) {
      if (!first) out += ",";
      out += std::to_string(k + 1);
      first = false;
    }
    return out + "}";
  }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint32_t bits_ = 0;
};

inline void check_mask(SubsetMask m, std::size_t n) {
  if (m.empty()) fail(ErrorKind::empty_subset, "index set must be nonempty");
  if ((m.bits() & ~SubsetMask::full(n).bits()) != 0) {
    fail(ErrorKind::empty_subset, "index set " + m.str() + " is out of range for n=" + std::to_string(n));
  }
}

}  // namespace bvmatch
