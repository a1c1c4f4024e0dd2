#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bvmatch/discrete.hpp"
#include "bvmatch/instance.hpp"
#include "json.hpp"

namespace bvmatch::harness {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kInstanceVersion = "bvmatch-instance/1";
inline constexpr std::string_view kDiscreteVersion = "bvmatch-discrete/1";

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  fail(ErrorKind::parse_error, field + ": " + what);
}

template <typename F>
auto with_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) field_error(field, e.detail());
    throw;
  } catch (const Json::exception& e) {
    field_error(field, e.what());
  }
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::parse_error, e.what());
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) field_error(where, std::string("missing key \"") + key + "\"");
  return obj.at(key);
}

inline std::string rational_text(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  field_error(field, "expected a rational string such as \"3/5\"");
}

inline IntervalSet parse_intervals(const Json& arr, const std::string& field) {
  if (!arr.is_array()) field_error(field, "expected an array of \"[lo, hi)\" strings");
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string f = field + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string()) field_error(f, "expected \"[lo, hi)\"");
    parts.push_back(with_field(f, [&] { return Interval::parse(arr[i].get<std::string>()); }));
  }
  return IntervalSet(std::move(parts));
}

}  // namespace detail

inline Json intervals_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& p : s.parts()) arr.push_back(p.str());
  return arr;
}

inline Json instance_json(const Instance& inst) {
  Json j;
  j["version"] = kInstanceVersion;
  j["universe"] = intervals_json(inst.universe());
  j["sets"] = Json::array();
  for (std::size_t k = 0; k < inst.n(); ++k) {
    j["sets"].push_back({{"name", inst.names()[k]}, {"intervals", intervals_json(inst.subsets()[k])}});
  }
  j["demands"] = Json::array();
  for (const auto& m : inst.demands()) j["demands"].push_back(m.str());
  return j;
}

inline std::string print_instance(const Instance& inst) { return instance_json(inst).dump(2) + "\n"; }

/// Demands come from a top-level "demands" array or from an "m" entry on each set.
inline Instance parse_instance(std::string_view text) {
  using namespace detail;
  Json j = parse_json(text);
  if (!j.is_object()) fail(ErrorKind::parse_error, "instance must be a JSON object");
  if (j.contains("version") && j["version"] != kInstanceVersion) {
    field_error("version", "unsupported format " + j["version"].dump());
  }
  IntervalSet universe = parse_intervals(require(j, "universe", "instance"), "universe");
  const Json& sets = require(j, "sets", "instance");
  if (!sets.is_array()) field_error("sets", "expected an array");
  std::vector<IntervalSet> subsets;
  std::vector<std::string> names;
  std::vector<Rational> demands;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    std::string f = "sets[" + std::to_string(k) + "]";
    const Json& s = sets[k];
    names.push_back(s.contains("name") ? s["name"].get<std::string>() : "A" + std::to_string(k + 1));
    subsets.push_back(parse_intervals(require(s, "intervals", f), f + ".intervals"));
    if (s.contains("m")) {
      demands.push_back(with_field(f + ".m", [&] { return Rational::parse(rational_text(s["m"], f + ".m")); }));
    }
  }
  if (j.contains("demands")) {
    if (!demands.empty()) field_error("demands", "give demands either per set (\"m\") or as a list, not both");
    const Json& d = j["demands"];
    if (!d.is_array()) field_error("demands", "expected an array");
    for (std::size_t k = 0; k < d.size(); ++k) {
      std::string f = "demands[" + std::to_string(k) + "]";
      demands.push_back(with_field(f, [&] { return Rational::parse(rational_text(d[k], f)); }));
    }
  }
  return Instance(MeasureSpace(std::move(universe)), std::move(subsets), std::move(demands), std::move(names));
}

inline DiscreteInstance parse_discrete(std::string_view text) {
  using namespace detail;
  Json j = parse_json(text);
  if (j.contains("version") && j["version"] != kDiscreteVersion) {
    field_error("version", "unsupported format " + j["version"].dump());
  }
  return with_field("discrete instance", [&] {
    DiscreteInstance inst;
    inst.ground = require(j, "ground", "instance").get<std::vector<ElementId>>();
    inst.subsets = require(j, "subsets", "instance").get<std::vector<std::vector<ElementId>>>();
    inst.demands = require(j, "demands", "instance").get<std::vector<std::int64_t>>();
    validate(inst);
    return inst;
  });
}

inline Json discrete_json(const DiscreteInstance& inst) {
  Json j;
  j["version"] = kDiscreteVersion;
  j["ground"] = inst.ground;
  j["subsets"] = inst.subsets;
  j["demands"] = inst.demands;
  return j;
}

/// Reads B_k from a report's "allocation" array.
inline std::vector<IntervalSet> parse_allocation(std::string_view text) {
  using namespace detail;
  Json j = parse_json(text);
  const Json& alloc = require(j, "allocation", "report");
  if (!alloc.is_array()) field_error("allocation", "expected an array");
  std::vector<IntervalSet> parts;
  for (std::size_t k = 0; k < alloc.size(); ++k) {
    std::string f = "allocation[" + std::to_string(k) + "]";
    parts.push_back(parse_intervals(require(alloc[k], "intervals", f), f + ".intervals"));
  }
  return parts;
}

}  // namespace bvmatch::harness
