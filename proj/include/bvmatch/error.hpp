#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bvmatch {

enum class ErrorKind {
  demand_exceeds_measure,
  partition_sum_mismatch,
  nonpositive_part,
  empty_instance,
  empty_subset,
  instance_too_large,
  invalid_instance,
  nonpositive_scale,
  nonpositive_xi,
  nonpositive_stage_demand,
  xi_above_threshold,
  infeasible_instance,
  nonpositive_demand,
  block_measure_mismatch,
  block_overlap,
  parse_error,
  oracle_scale,
  instance_mismatch,
  invariant_violation,
  nesting_infeasible,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::demand_exceeds_measure: return "demand-exceeds-measure";
    case ErrorKind::partition_sum_mismatch: return "partition-sum-mismatch";
    case ErrorKind::nonpositive_part: return "nonpositive-part";
    case ErrorKind::empty_instance: return "empty-instance";
    case ErrorKind::empty_subset: return "empty-subset";
    case ErrorKind::instance_too_large: return "instance-too-large";
    case ErrorKind::invalid_instance: return "invalid-instance";
    case ErrorKind::nonpositive_scale: return "nonpositive-scale";
    case ErrorKind::nonpositive_xi: return "nonpositive-xi";
    case ErrorKind::nonpositive_stage_demand: return "nonpositive-stage-demand";
    case ErrorKind::xi_above_threshold: return "xi-above-threshold";
    case ErrorKind::infeasible_instance: return "infeasible-instance";
    case ErrorKind::nonpositive_demand: return "nonpositive-demand";
    case ErrorKind::block_measure_mismatch: return "block-measure-mismatch";
    case ErrorKind::block_overlap: return "block-overlap";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::oracle_scale: return "oracle-scale";
    case ErrorKind::instance_mismatch: return "instance-mismatch";
    case ErrorKind::invariant_violation: return "invariant-violation";
    case ErrorKind::nesting_infeasible: return "nesting-infeasible";
  }
  return "unknown";
}

/// Internal defects (a proven property failed at runtime) as opposed to bad input.
inline constexpr bool is_internal(ErrorKind kind) {
  return kind == ErrorKind::invariant_violation || kind == ErrorKind::nesting_infeasible;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix, for re-wrapping with more context.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Checks a property the math guarantees; a failure is a defect, never bad input.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::invariant_violation, what);
}

}  // namespace bvmatch
