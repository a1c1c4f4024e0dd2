#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "bvmatch/discrete.hpp"
#include "bvmatch/hall.hpp"
#include "bvmatch/instance.hpp"
#include "bvmatch/venn_atoms.hpp"

namespace bvmatch {

/// E_{Q,ξ} and its measure-ξ blocks. Blocks are the consecutive leftmost
/// pieces of the atom, so block j covers measure coordinates [jξ, (j+1)ξ) of
/// S_Q. They are kept implicit because their number grows like 1/ξ.
struct BlockGrid {
  SubsetMask mask;
  IntervalSet atom;    // S_Q
  IntervalSet region;  // E_{Q,ξ}
  Rational xi;
  std::int64_t count = 0;

  IntervalSet block(std::int64_t j) const {
    return measure_slice(atom, xi * Rational(j), xi * Rational(j + 1));
  }

  /// Union of blocks [first, first + len).
  IntervalSet blocks(std::int64_t first, std::int64_t len) const {
    return measure_slice(atom, xi * Rational(first), xi * Rational(first + len));
  }

  std::vector<IntervalSet> materialize() const {
    std::vector<IntervalSet> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t j = 0; j < count; ++j) out.push_back(block(j));
    return out;
  }
};

/// Consecutive blocks [start, start + len) of one grid owned by demand k.
struct BlockRun {
  std::size_t demand;
  std::int64_t start;
  std::int64_t len;
};

struct XiStage {
  Rational xi;
  std::vector<IntervalSet> subsets;  // A_k
  std::vector<Rational> demands;     // m_k
  std::vector<BlockGrid> grids;      // one per nonempty atom, mask order
  std::vector<IntervalSet> a_xi;     // A_{k,ξ}
  std::vector<std::int64_t> d_xi;    // d_{k,ξ}; may be <= 0 above the threshold
  bool above_threshold = false;

  bool solved = false;
  std::vector<std::vector<BlockRun>> runs;  // per grid
  std::vector<IntervalSet> b_xi;            // B_{k,ξ}

  std::size_t n() const { return subsets.size(); }

  /// Blocks of grid j currently assigned to demand k.
  std::int64_t taken(std::size_t j, std::size_t k) const {
    std::int64_t total = 0;
    for (const auto& r : runs[j]) {
      if (r.demand == k) total += r.len;
    }
    return total;
  }

  std::int64_t used(std::size_t j) const {
    std::int64_t total = 0;
    for (const auto& r : runs[j]) total += r.len;
    return total;
  }
};

/// min_k m_k / (2^{n+1} + 1): every d_{k,ξ} is positive for 0 < ξ <= this.
inline Rational xi_threshold(const Instance& inst) {
  Rational denom = pow2(static_cast<unsigned>(inst.n() + 1)) + Rational(1);
  Rational best = inst.demands().front();
  for (const auto& m : inst.demands()) {
    if (m < best) best = m;
  }
  return best / denom;
}

inline std::int64_t deflated_demand(const Rational& m, const Rational& xi, std::size_t n) {
  return to_int64(floor_div(m, xi)) - (std::int64_t{1} << (n + 1));
}

inline XiStage discretize(const Instance& inst, const Rational& xi) {
  if (xi.sign() <= 0) fail(ErrorKind::nonpositive_xi, "xi must be positive, got " + xi.str());
  XiStage st;
  st.xi = xi;
  st.subsets = inst.subsets();
  st.demands = inst.demands();
  st.above_threshold = xi > xi_threshold(inst);
  const std::size_t n = inst.n();
  AtomTable table = atomize(inst.subsets());
  std::vector<std::vector<Interval>> a_parts(n);
  for (const auto& atom : table.atoms()) {
    BlockGrid g;
    g.mask = atom.mask;
    g.atom = atom.region;
    g.xi = xi;
    g.count = to_int64(floor_div(atom.region.measure(), xi));
    g.region = carve(atom.region, xi * Rational(g.count));
    for (auto k : atom.mask.indices()) a_parts[k].insert(a_parts[k].end(), g.region.parts().begin(), g.region.parts().end());
    st.grids.push_back(std::move(g));
  }
  for (std::size_t k = 0; k < n; ++k) {
    st.a_xi.emplace_back(std::move(a_parts[k]));
    st.d_xi.push_back(deflated_demand(inst.demands()[k], xi, n));
  }
  st.runs.assign(st.grids.size(), {});
  return st;
}

struct GapBound {
  Rational actual;  // ν(∪_{i∈Q} A_i) - ν(∪_{i∈Q} A_{i,ξ})
  Rational bound;   // ξ(2^n - 2^{n-|Q|})
};

inline GapBound stage_gap_bound(const XiStage& st, SubsetMask q) {
  check_mask(q, st.n());
  IntervalSet full, approx;
  for (auto k : q.indices()) {
    full = set_union(full, st.subsets[k]);
    approx = set_union(approx, st.a_xi[k]);
  }
  const auto n = static_cast<unsigned>(st.n());
  GapBound gb{full.measure() - approx.measure(),
              st.xi * (pow2(n) - pow2(n - static_cast<unsigned>(q.count())))};
  ensure(gb.actual.sign() >= 0, "A_{k,xi} union exceeds A_k union for " + q.str());
  // Each of the 2^n - 2^{n-|Q|} cells meeting Q loses strictly less than ξ.
  ensure(gb.actual < gb.bound, "discretization gap " + gb.actual.str() + " not below " + gb.bound.str() + " for " + q.str());
  return gb;
}

/// Outcome of checking ν(∪_{i∈Q} A_{i,ξ}) >= ξ Σ_{i∈Q} d_{i,ξ} over all Q.
struct StageInequalityReport {
  std::size_t masks_checked = 0;
  std::size_t violations = 0;
  bool all_strict = true;
};

inline StageInequalityReport check_stage_inequalities(const XiStage& st) {
  StageInequalityReport rep;
  const std::size_t n = st.n();
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    SubsetMask q(bits);
    IntervalSet u;
    std::int64_t dsum = 0;
    for (auto k : q.indices()) {
      u = set_union(u, st.a_xi[k]);
      dsum += st.d_xi[k];
    }
    Rational lhs = u.measure();
    Rational rhs = st.xi * Rational(dsum);
    ++rep.masks_checked;
    if (lhs < rhs) ++rep.violations;
    if (!(lhs > rhs)) rep.all_strict = false;
  }
  return rep;
}

namespace detail {

inline void materialize_b(XiStage& st) {
  std::vector<std::vector<Interval>> parts(st.n());
  for (std::size_t j = 0; j < st.grids.size(); ++j) {
    for (const auto& r : st.runs[j]) {
      if (r.len == 0) continue;
      auto piece = st.grids[j].blocks(r.start, r.len);
      parts[r.demand].insert(parts[r.demand].end(), piece.parts().begin(), piece.parts().end());
    }
  }
  st.b_xi.clear();
  for (auto& p : parts) st.b_xi.emplace_back(std::move(p));
}

// Packs new runs for each demand (ascending k) after the blocks already in use.
inline void append_runs(XiStage& st, const std::vector<std::vector<std::int64_t>>& take) {
  for (std::size_t j = 0; j < st.grids.size(); ++j) {
    std::int64_t next = st.used(j);
    for (std::size_t k = 0; k < st.n(); ++k) {
      if (take[k][j] == 0) continue;
      st.runs[j].push_back({k, next, take[k][j]});
      next += take[k][j];
    }
    ensure(next <= st.grids[j].count, "atom " + st.grids[j].mask.str() + " over-allocated");
  }
}

inline std::vector<std::vector<std::size_t>> grid_collections(const XiStage& st) {
  std::vector<std::vector<std::size_t>> alpha(st.n());
  for (std::size_t j = 0; j < st.grids.size(); ++j) {
    for (auto k : st.grids[j].mask.indices()) alpha[k].push_back(j);
  }
  return alpha;
}

}  // namespace detail

/// Throws invariant_violation unless every stage invariant holds exactly.
inline void verify_stage(const XiStage& st) {
  for (const auto& g : st.grids) {
    ensure(g.region.measure() == g.xi * Rational(g.count), "E measure mismatch for " + g.mask.str());
    ensure(is_subset(g.region, g.atom), "E not inside S for " + g.mask.str());
    ensure(g.atom.measure() - g.region.measure() < g.xi, "E leaves a full block unused in " + g.mask.str());
  }
  for (std::size_t k = 0; k < st.n(); ++k) {
    ensure(is_subset(st.a_xi[k], st.subsets[k]), "A_{k,xi} not inside A_k");
  }
  if (!st.solved) return;
  for (std::size_t k = 0; k < st.n(); ++k) {
    ensure(st.b_xi[k].measure() == st.xi * Rational(st.d_xi[k]), "B_{k,xi} measure differs from xi*d for k=" + std::to_string(k + 1));
    ensure(is_subset(st.b_xi[k], st.a_xi[k]), "B_{k,xi} not inside A_{k,xi} for k=" + std::to_string(k + 1));
    for (std::size_t l = k + 1; l < st.n(); ++l) {
      ensure(are_disjoint(st.b_xi[k], st.b_xi[l]), "B_{k,xi} overlap for k=" + std::to_string(k + 1) + ", " + std::to_string(l + 1));
    }
  }
}

/// How a stage picks among the many valid block matchings.
///
/// plain: any maximum matching. Valid for one stage, but a later refinement
/// step may then have no nested extension.
/// extendable: blocks of atom Q given to k are capped at ⌊g(k,Q)/ξ⌋, where g
/// is a max flow of the residual continuous instance (unmet demand against
/// unused atom measure). The residual stays feasible after every stage, which
/// makes every later nested step solvable.
enum class StageChoice { extendable, plain };

namespace detail {

// Per-(k, grid) caps ⌊g(k,Q)/ξ⌋ from a residual continuous max flow.
inline std::vector<std::vector<std::int64_t>> residual_caps(const XiStage& st) {
  const std::size_t n = st.n();
  MaxFlow<Rational> g(2 + n + st.grids.size());
  Rational total;
  std::vector<Rational> remaining(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t blocks = 0;
    for (std::size_t j = 0; j < st.grids.size(); ++j) blocks += st.taken(j, k);
    remaining[k] = st.demands[k] - st.xi * Rational(blocks);
    ensure(remaining[k].sign() >= 0, "stage allocation exceeds demand");
    total += remaining[k];
    g.add_edge(0, 2 + k, remaining[k]);
  }
  std::vector<std::vector<std::size_t>> edge(n, std::vector<std::size_t>(st.grids.size(), SIZE_MAX));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < st.grids.size(); ++j) {
      if (st.grids[j].mask.contains(k)) edge[k][j] = g.add_edge(2 + k, 2 + n + j, total);
    }
  }
  for (std::size_t j = 0; j < st.grids.size(); ++j) {
    g.add_edge(2 + n + j, 1, st.grids[j].atom.measure() - st.xi * Rational(st.used(j)));
  }
  if (g.run(0, 1) != total) {
    fail(ErrorKind::infeasible_instance, "unmet demand cannot be matched into unused atom measure at xi=" + st.xi.str());
  }
  std::vector<std::vector<std::int64_t>> caps(n, std::vector<std::int64_t>(st.grids.size(), 0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < st.grids.size(); ++j) {
      if (edge[k][j] != SIZE_MAX) caps[k][j] = to_int64(floor_div(g.flow(edge[k][j]), st.xi));
    }
  }
  return caps;
}

// Matches `increment` more blocks per demand into the blocks not yet in use.
inline ClassSolution match_increment(const XiStage& st, const std::vector<std::int64_t>& increment, StageChoice choice) {
  std::vector<std::int64_t> free;
  for (std::size_t j = 0; j < st.grids.size(); ++j) free.push_back(st.grids[j].count - st.used(j));
  if (choice == StageChoice::plain) return solve_block_classes(free, grid_collections(st), increment);
  auto caps = residual_caps(st);
  return solve_block_classes(free, grid_collections(st), increment, &caps);
}

}  // namespace detail

/// Matches blocks to deflated demands; collections α_k are the blocks of the
/// atoms containing k. The instance must already be known feasible.
inline XiStage solve_stage(XiStage st, StageChoice choice = StageChoice::extendable) {
  for (std::size_t k = 0; k < st.n(); ++k) {
    if (st.d_xi[k] <= 0) {
      fail(ErrorKind::nonpositive_stage_demand,
           "d_" + std::to_string(k + 1) + " = " + std::to_string(st.d_xi[k]) + " at xi=" + st.xi.str());
    }
  }
  st.runs.assign(st.grids.size(), {});
  ClassSolution sol = detail::match_increment(st, st.d_xi, choice);
  if (!sol.feasible()) {
    fail(ErrorKind::invariant_violation,
         "block matching infeasible at xi=" + st.xi.str() + ", violating " + sol.violating->str());
  }
  detail::append_runs(st, sol.take);
  st.solved = true;
  detail::materialize_b(st);
  verify_stage(st);
  return st;
}

struct RefinementRun {
  std::vector<XiStage> stages;     // ξ_i = ξ_0 / 2^i
  std::vector<IntervalSet> limit_b;  // B_k at the last stage
};

namespace detail {

inline Rational gap_bound_factor(std::size_t n) { return pow2(static_cast<unsigned>(n + 1)) + Rational(1); }

inline void verify_gap(const XiStage& st, std::size_t index) {
  const Rational bound = st.xi * gap_bound_factor(st.n());
  for (std::size_t k = 0; k < st.n(); ++k) {
    ensure(st.demands[k] - st.b_xi[k].measure() <= bound,
           "stage " + std::to_string(index) + ": gap for k=" + std::to_string(k + 1) + " exceeds " + bound.str());
  }
}

}  // namespace detail

/// Halves ξ `steps` times. Each finer stage keeps every block chosen before
/// (a ξ_i block is exactly two ξ_{i+1} blocks) and matches only the increment
/// d_{k,ξ_{i+1}} - 2 d_{k,ξ_i} into the blocks still free. With
/// StageChoice::plain the increment can be unmatchable; that surfaces as a
/// nesting_infeasible error.
inline RefinementRun refine(const Instance& inst, const Rational& xi0, std::size_t steps,
                            StageChoice choice = StageChoice::extendable) {
  if (xi0.sign() <= 0) fail(ErrorKind::nonpositive_xi, "xi must be positive, got " + xi0.str());
  if (xi0 > xi_threshold(inst)) {
    fail(ErrorKind::xi_above_threshold, "xi=" + xi0.str() + " exceeds threshold " + xi_threshold(inst).str());
  }
  if (!check_flow(inst).feasible()) fail(ErrorKind::infeasible_instance, "refinement needs a feasible instance");

  RefinementRun run;
  run.stages.push_back(solve_stage(discretize(inst, xi0), choice));
  detail::verify_gap(run.stages.back(), 0);
  for (std::size_t i = 1; i <= steps; ++i) {
    const XiStage& prev = run.stages.back();
    XiStage st = discretize(inst, prev.xi / Rational(2));
    ensure(st.grids.size() == prev.grids.size(), "atom table changed between stages");

    for (std::size_t j = 0; j < st.grids.size(); ++j) {
      ensure(st.grids[j].count >= 2 * prev.grids[j].count, "finer grid lost blocks in " + st.grids[j].mask.str());
      for (const auto& r : prev.runs[j]) st.runs[j].push_back({r.demand, 2 * r.start, 2 * r.len});
    }
    std::vector<std::int64_t> increment;
    for (std::size_t k = 0; k < st.n(); ++k) {
      ensure(st.d_xi[k] >= 2 * prev.d_xi[k], "deflated demand decreased at stage " + std::to_string(i));
      increment.push_back(st.d_xi[k] - 2 * prev.d_xi[k]);
    }
    ClassSolution sol = detail::match_increment(st, increment, choice);
    if (!sol.feasible()) {
      std::string dump = "stage " + std::to_string(i) + " (xi=" + st.xi.str() + "): increments";
      for (auto v : increment) dump += " " + std::to_string(v);
      dump += "; free blocks";
      for (std::size_t j = 0; j < st.grids.size(); ++j) {
        dump += " " + st.grids[j].mask.str() + ":" + std::to_string(st.grids[j].count - st.used(j));
      }
      dump += "; violating " + sol.violating->str();
      fail(ErrorKind::nesting_infeasible, dump);
    }
    detail::append_runs(st, sol.take);
    st.solved = true;
    detail::materialize_b(st);
    verify_stage(st);
    detail::verify_gap(st, i);
    for (std::size_t k = 0; k < st.n(); ++k) {
      ensure(is_subset(prev.b_xi[k], st.b_xi[k]), "nesting broken at stage " + std::to_string(i));
      ensure(prev.b_xi[k].measure() <= st.b_xi[k].measure(), "measure decreased at stage " + std::to_string(i));
    }
    run.stages.push_back(std::move(st));
  }
  run.limit_b = run.stages.back().b_xi;
  return run;
}

struct LimitComparison {
  Rational final_xi;
  Rational bound;                   // ξ_T (2^{n+1} + 1)
  std::vector<Rational> run_gap;    // m_k - ν(limit_b_k)
  std::vector<Rational> exact_gap;  // m_k - ν(B_k) of the exact allocation
  bool within_bound = true;
  bool limit_valid = true;   // limit_b_k ⊆ A_k and pairwise disjoint
  bool exact_valid = true;
};

inline LimitComparison compare_limit(const Instance& inst, const RefinementRun& run,
                                     const std::vector<IntervalSet>& exact) {
  if (run.stages.empty() || run.stages.front().subsets != inst.subsets() ||
      run.stages.front().demands != inst.demands() || exact.size() != inst.n() ||
      run.limit_b.size() != inst.n()) {
    fail(ErrorKind::instance_mismatch, "refinement run and allocation do not belong to this instance");
  }
  LimitComparison out;
  out.final_xi = run.stages.back().xi;
  out.bound = out.final_xi * detail::gap_bound_factor(inst.n());
  for (std::size_t k = 0; k < inst.n(); ++k) {
    out.run_gap.push_back(inst.demands()[k] - run.limit_b[k].measure());
    out.exact_gap.push_back(inst.demands()[k] - exact[k].measure());
    if (out.run_gap.back() > out.bound || out.run_gap.back().sign() < 0) out.within_bound = false;
    if (!is_subset(run.limit_b[k], inst.subsets()[k])) out.limit_valid = false;
    if (!is_subset(exact[k], inst.subsets()[k]) || !out.exact_gap.back().is_zero()) out.exact_valid = false;
    for (std::size_t l = k + 1; l < inst.n(); ++l) {
      if (!are_disjoint(run.limit_b[k], run.limit_b[l])) out.limit_valid = false;
      if (!are_disjoint(exact[k], exact[l])) out.exact_valid = false;
    }
  }
  return out;
}

}  // namespace bvmatch
