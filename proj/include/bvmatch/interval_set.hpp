#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bvmatch/error.hpp"
#include "bvmatch/rational.hpp"

namespace bvmatch {

/// Half-open interval [lo, hi) with lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi)) fail(ErrorKind::parse_error, "empty interval [" + lo.str() + ", " + hi.str() + ")");
  }

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }

  std::string str() const { return "[" + lo.str() + ", " + hi.str() + ")"; }

  /// Parses "[lo, hi)".
  static Interval parse(std::string_view text) {
    auto bad = [&] { fail(ErrorKind::parse_error, "malformed interval '" + std::string(text) + "'"); };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.size() < 5 || text.front() != '[' || text.back() != ')') bad();
    text = text.substr(1, text.size() - 2);
    auto comma = text.find(',');
    if (comma == std::string_view::npos) bad();
    Rational lo = Rational::parse(text.substr(0, comma));
    Rational hi = Rational::parse(text.substr(comma + 1));
    if (!(lo < hi)) {
      fail(ErrorKind::parse_error, "interval needs lo < hi, got '[" + lo.str() + ", " + hi.str() + ")'");
    }
    return Interval(std::move(lo), std::move(hi));
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open rational intervals kept in normal form: parts sorted,
/// pairwise disjoint and non-adjacent. Equal point sets have identical part lists.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts) : IntervalSet(std::vector<Interval>(parts)) {}
  explicit IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

  static IntervalSet single(Rational lo, Rational hi) {
    return IntervalSet(std::vector<Interval>{Interval(std::move(lo), std::move(hi))});
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  Rational measure() const {
    Rational total;
    for (const auto& p : parts_) total += p.length();
    return total;
  }

  bool contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
  }

  /// Sorted distinct endpoints of all parts.
  std::vector<Rational> endpoints() const {
    std::vector<Rational> pts;
    pts.reserve(parts_.size() * 2);
    for (const auto& p : parts_) {
      pts.push_back(p.lo);
      pts.push_back(p.hi);
    }
    return pts;
  }

  std::string str() const {
    if (parts_.empty()) return "∅";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += " ∪ ";
      out += parts_[i].str();
    }
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  void normalize() {
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    merged.reserve(parts_.size());
    for (auto& p : parts_) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        if (merged.back().hi < p.hi) merged.back().hi = p.hi;
      } else {
        merged.push_back(std::move(p));
      }
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

inline Rational measure(const IntervalSet& s) { return s.measure(); }

inline IntervalSet set_union(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Interval> all(s.parts());
  all.insert(all.end(), t.parts().begin(), t.parts().end());
  return IntervalSet(std::move(all));
}

inline IntervalSet set_intersect(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Interval> out;
  const auto& a = s.parts();
  const auto& b = t.parts();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = std::max(a[i].lo, b[j].lo);
    const Rational& hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return IntervalSet(std::move(out));
}

inline IntervalSet set_difference(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Interval> out;
  const auto& b = t.parts();
  std::size_t j = 0;
  for (const auto& p : s.parts()) {
    Rational cur = p.lo;
    while (j < b.size() && b[j].hi <= cur) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].lo < p.hi) {
      if (cur < b[k].lo) out.emplace_back(cur, b[k].lo);
      if (cur < b[k].hi) cur = b[k].hi;
      if (!(cur < p.hi)) break;
      ++k;
    }
    if (cur < p.hi) out.emplace_back(cur, p.hi);
  }
  return IntervalSet(std::move(out));
}

enum class SetOp { union_, intersect, difference };

inline IntervalSet set_algebra(SetOp op, const IntervalSet& s, const IntervalSet& t) {
  switch (op) {
    case SetOp::union_: return set_union(s, t);
    case SetOp::intersect: return set_intersect(s, t);
    case SetOp::difference: return set_difference(s, t);
  }
  return {};
}

inline bool is_subset(const IntervalSet& s, const IntervalSet& t) {
  return set_difference(s, t).empty();
}

inline bool are_disjoint(const IntervalSet& s, const IntervalSet& t) {
  return set_intersect(s, t).empty();
}

/// Points of s whose leftmost measure coordinate lies in [from, to), i.e.
/// carve(s, to) minus carve(s, from). Requires 0 <= from <= to <= measure(s).
inline IntervalSet measure_slice(const IntervalSet& s, const Rational& from, const Rational& to) {
  std::vector<Interval> out;
  Rational offset;  // measure of s to the left of the current part
  for (const auto& p : s.parts()) {
    if (!(offset < to)) break;
    Rational len = p.length();
    Rational end = offset + len;
    if (from < end) {
      Rational a = from > offset ? p.lo + (from - offset) : p.lo;
      Rational b = to < end ? p.lo + (to - offset) : p.hi;
      if (a < b) out.emplace_back(std::move(a), std::move(b));
    }
    offset = std::move(end);
  }
  return IntervalSet(std::move(out));
}

/// Leftmost subset of s with measure exactly c.
inline IntervalSet carve(const IntervalSet& s, const Rational& c) {
  if (c.sign() < 0 || c > s.measure()) {
    fail(ErrorKind::demand_exceeds_measure,
         "cannot carve measure " + c.str() + " from a set of measure " + s.measure().str());
  }
  return measure_slice(s, Rational(0), c);
}

/// Splits s into consecutive leftmost pieces of the given measures.
inline std::vector<IntervalSet> partition(const IntervalSet& s, std::span<const Rational> sizes) {
  Rational total;
  for (const auto& r : sizes) {
    if (r.sign() <= 0) fail(ErrorKind::nonpositive_part, "partition part " + r.str() + " is not positive");
    total += r;
  }
  if (total != s.measure()) {
    fail(ErrorKind::partition_sum_mismatch,
         "parts sum to " + total.str() + " but the set has measure " + s.measure().str());
  }
  std::vector<IntervalSet> pieces;
  pieces.reserve(sizes.size());
  Rational from;
  for (const auto& r : sizes) {
    Rational to = from + r;
    pieces.push_back(measure_slice(s, from, to));
    from = std::move(to);
  }
  return pieces;
}

/// (Omega, S, nu) realized as a positive-measure universe of intervals.
class MeasureSpace {
 public:
  explicit MeasureSpace(IntervalSet universe) : universe_(std::move(universe)) {
    if (universe_.measure().sign() <= 0) {
      fail(ErrorKind::invalid_instance, "universe must have positive measure");
    }
  }

  const IntervalSet& universe() const { return universe_; }
  bool contains(const IntervalSet& s) const { return is_subset(s, universe_); }

 private:
  IntervalSet universe_;
};

}  // namespace bvmatch
