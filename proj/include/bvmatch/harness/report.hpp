#pragma once

#include "bvmatch/harness/instance_io.hpp"
#include "bvmatch/xi_emulator.hpp"

namespace bvmatch::harness {

inline Json mask_json(SubsetMask m) {
  Json arr = Json::array();
  for (auto k : m.indices()) arr.push_back(k + 1);
  return arr;
}

inline Json certificate_json(const Certificate& c) {
  Json j;
  j["verdict"] = c.feasible() ? "feasible" : "infeasible";
  if (c.violation) {
    j["certificate"] = {{"violating", mask_json(c.violation->i_set)},
                        {"lhs", c.violation->lhs.str()},
                        {"rhs", c.violation->rhs.str()}};
  }
  return j;
}

inline Json allocation_json(const Instance& inst, const std::vector<IntervalSet>& parts) {
  Json arr = Json::array();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    arr.push_back({{"name", inst.names()[k]}, {"intervals", intervals_json(parts[k])}, {"measure", parts[k].measure().str()}});
  }
  return arr;
}

inline Json stage_json(const Instance& inst, const XiStage& st) {
  Json j;
  j["xi"] = st.xi.str();
  j["above_threshold"] = st.above_threshold;
  j["atoms"] = Json::array();
  for (const auto& g : st.grids) {
    j["atoms"].push_back({{"mask", mask_json(g.mask)},
                          {"S", intervals_json(g.atom)},
                          {"S_measure", g.atom.measure().str()},
                          {"E", intervals_json(g.region)},
                          {"blocks", g.count}});
  }
  j["sets"] = Json::array();
  for (std::size_t k = 0; k < st.n(); ++k) {
    Json s = {{"name", inst.names()[k]},
              {"A_xi", intervals_json(st.a_xi[k])},
              {"A_xi_measure", st.a_xi[k].measure().str()},
              {"d", st.d_xi[k]}};
    if (st.solved) {
      s["B"] = intervals_json(st.b_xi[k]);
      s["B_measure"] = st.b_xi[k].measure().str();
      s["gap"] = (st.demands[k] - st.b_xi[k].measure()).str();
    }
    j["sets"].push_back(std::move(s));
  }
  return j;
}

}  // namespace bvmatch::harness
