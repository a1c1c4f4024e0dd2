// Command-line front end: check, solve, emulate, refine, discrete, gen,
// oracle, validate, batch. Reports are JSON on stdout.
//
// Exit codes: 0 feasible and validated, 1 infeasible with certificate (or a
// failed validation), 2 input error, 3 internal invariant violation.

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bvmatch/bvmatch.hpp"
#include "bvmatch/harness/generator.hpp"
#include "bvmatch/harness/instance_io.hpp"
#include "bvmatch/harness/oracle.hpp"
#include "bvmatch/harness/report.hpp"
#include "bvmatch/harness/validate.hpp"

namespace {

using namespace bvmatch;
using harness::Json;

constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) {
  try {
    return harness::parse_instance(read_file(path));
  } catch (const Error& e) {
    if (is_internal(e.kind())) throw;
    throw Error(e.kind(), path + ": " + e.detail());
  }
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Output {
  bool quiet = false;
  std::string path;

  void emit(const Json& report) const {
    std::ostringstream text;
    if (quiet) {
      text << (report.contains("verdict") ? report["verdict"].get<std::string>() : std::string("done")) << "\n";
    } else {
      text << report.dump(2) << "\n";
    }
    if (path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream(path) << text.str();
      if (quiet) std::cout << text.str();
    }
  }
};

// Feasibility from the flow path, cross-checked against the set-algebra oracle
// whenever the instance is small enough for it.
Certificate certified_check(const Instance& inst, Json& report) {
  Certificate cert = check_flow(inst);
  if (cert.violation) {
    ensure(harness::violation_holds(inst, *cert.violation), "flow certificate does not re-validate");
  }
  if (inst.n() <= kMaxExhaustiveSets) {
    Certificate truth = harness::oracle(inst);
    ensure(truth.feasible() == cert.feasible(), "flow verdict disagrees with the oracle");
    report["oracle_agrees"] = true;
  }
  return cert;
}

int cmd_check(const std::string& file, const Output& out) {
  Stopwatch sw;
  Instance inst = load_instance(file);
  Json report;
  Certificate cert = certified_check(inst, report);
  Json c = harness::certificate_json(cert);
  c.update(report);
  c["timing_ms"] = sw.ms();
  out.emit(c);
  return cert.feasible() ? kFeasible : kInfeasible;
}

int cmd_oracle(const std::string& file, const Output& out) {
  Stopwatch sw;
  Instance inst = load_instance(file);
  Certificate cert = harness::oracle(inst);
  Json c = harness::certificate_json(cert);
  c["timing_ms"] = sw.ms();
  out.emit(c);
  return cert.feasible() ? kFeasible : kInfeasible;
}

Json solve_report(const Instance& inst, int& code) {
  Stopwatch sw;
  Json extra;
  Certificate cert = certified_check(inst, extra);
  AllocationResult res = allocate_exact(inst);
  Json report;
  if (auto* alloc = std::get_if<Allocation>(&res)) {
    ensure(cert.feasible(), "allocation produced for an instance the checker rejects");
    auto v = harness::validate(inst, alloc->parts);
    ensure(v.pass(), "allocation failed validation: " + (v.pass() ? std::string() : v.failures.front()));
    report["verdict"] = "feasible";
    report["allocation"] = harness::allocation_json(inst, alloc->parts);
    report["validated"] = true;
    code = kFeasible;
  } else {
    const auto& viol = std::get<ViolatingSet>(res);
    ensure(!cert.feasible(), "allocator reported a violation for a feasible instance");
    ensure(harness::violation_holds(inst, viol), "allocator certificate does not re-validate");
    report = harness::certificate_json(Certificate::violated(viol));
    code = kInfeasible;
  }
  report.update(extra);
  report["timing_ms"] = sw.ms();
  return report;
}

int cmd_solve(const std::string& file, const Output& out) {
  Instance inst = load_instance(file);
  int code = kFeasible;
  Json report = solve_report(inst, code);
  out.emit(report);
  return code;
}

Rational xi_or_threshold(const Instance& inst, const std::string& xi) {
  return xi.empty() ? xi_threshold(inst) : Rational::parse(xi);
}

int cmd_emulate(const std::string& file, const std::string& xi_text, const Output& out) {
  Stopwatch sw;
  Instance inst = load_instance(file);
  Rational xi = xi_or_threshold(inst, xi_text);
  Json report;
  Certificate cert = certified_check(inst, report);
  XiStage st = discretize(inst, xi);
  verify_stage(st);
  report["verdict"] = cert.feasible() ? "feasible" : "infeasible";
  report["threshold"] = xi_threshold(inst).str();
  if (cert.violation) report.update(harness::certificate_json(cert));

  bool positive = true;
  for (auto d : st.d_xi) positive = positive && d > 0;
  if (cert.feasible() && positive) st = solve_stage(std::move(st));
  else if (cert.feasible()) report["note"] = "some d_k <= 0 at this xi; stage left unsolved";

  report["stage"] = harness::stage_json(inst, st);
  if (inst.n() <= kMaxExhaustiveSets) {
    Json gaps = Json::array();
    for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << inst.n()); ++bits) {
      GapBound gb = stage_gap_bound(st, SubsetMask(bits));
      gaps.push_back({{"mask", harness::mask_json(SubsetMask(bits))}, {"actual", gb.actual.str()}, {"bound", gb.bound.str()}});
    }
    report["gap_bounds"] = std::move(gaps);
    auto ineq = check_stage_inequalities(st);
    report["stage_inequality"] = {{"masks", ineq.masks_checked}, {"violations", ineq.violations}, {"strict", ineq.all_strict}};
    if (cert.feasible() && !st.above_threshold) ensure(ineq.violations == 0, "stage inequality violated below threshold");
  }
  report["timing_ms"] = sw.ms();
  int code = cert.feasible() ? kFeasible : kInfeasible;
  out.emit(report);
  return code;
}

int cmd_refine(const std::string& file, const std::string& xi_text, std::size_t steps, const Output& out) {
  Stopwatch sw;
  Instance inst = load_instance(file);
  Rational xi = xi_or_threshold(inst, xi_text);
  Json report;
  Certificate cert = certified_check(inst, report);
  if (!cert.feasible()) {
    report.update(harness::certificate_json(cert));
    report["note"] = "refinement requires a feasible instance";
    out.emit(report);
    return kInfeasible;
  }
  RefinementRun run = refine(inst, xi, steps);
  auto exact = std::get<Allocation>(allocate_exact(inst));
  LimitComparison cmp = compare_limit(inst, run, exact.parts);
  ensure(cmp.within_bound && cmp.limit_valid && cmp.exact_valid, "limit comparison failed");

  report["verdict"] = "feasible";
  report["xi0"] = xi.str();
  Json stages = Json::array();
  for (const auto& st : run.stages) {
    Json s = {{"xi", st.xi.str()}, {"d", st.d_xi}};
    Json measures = Json::array(), gaps = Json::array();
    for (std::size_t k = 0; k < st.n(); ++k) {
      measures.push_back(st.b_xi[k].measure().str());
      gaps.push_back((st.demands[k] - st.b_xi[k].measure()).str());
    }
    s["B_measure"] = std::move(measures);
    s["gap"] = std::move(gaps);
    stages.push_back(std::move(s));
  }
  report["stages"] = std::move(stages);
  report["limit"] = harness::allocation_json(inst, run.limit_b);
  Json lim = {{"final_xi", cmp.final_xi.str()}, {"bound", cmp.bound.str()}, {"within_bound", cmp.within_bound}};
  lim["run_gap"] = Json::array();
  lim["exact_gap"] = Json::array();
  for (std::size_t k = 0; k < inst.n(); ++k) {
    lim["run_gap"].push_back(cmp.run_gap[k].str());
    lim["exact_gap"].push_back(cmp.exact_gap[k].str());
  }
  report["comparison"] = std::move(lim);
  report["timing_ms"] = sw.ms();
  out.emit(report);
  return kFeasible;
}

int cmd_discrete(const std::string& file, const std::string& xi_text, const Output& out) {
  Stopwatch sw;
  DiscreteInstance inst = harness::parse_discrete(read_file(file));
  Json report;
  DiscreteSolution sol;
  if (xi_text.empty()) {
    sol = solve_discrete(inst);
  } else {
    ScaledSolution scaled = solve_scaled(inst, Rational::parse(xi_text));
    sol = scaled.solution;
    report["xi"] = scaled.xi.str();
    Json eta = Json::array();
    for (const auto& e : scaled.eta) eta.push_back(e.str());
    if (sol.feasible()) report["eta"] = std::move(eta);
  }
  report["verdict"] = sol.feasible() ? "feasible" : "infeasible";
  if (sol.feasible()) {
    report["parts"] = sol.parts;
  } else {
    report["violating"] = harness::mask_json(*sol.violating);
    report["union_size"] = union_size(inst, *sol.violating);
    report["demand_sum"] = demand_sum(inst, *sol.violating);
  }
  report["timing_ms"] = sw.ms();
  int code = sol.feasible() ? kFeasible : kInfeasible;
  out.emit(report);
  return code;
}

int cmd_gen(std::uint64_t seed, std::size_t n, const std::string& mode, std::int64_t denom_cap, const Output& out) {
  auto g = harness::generate(seed, n, harness::parse_mode(mode), denom_cap);
  std::string text = harness::print_instance(g.instance);
  if (out.path.empty()) std::cout << text;
  else std::ofstream(out.path) << text;
  if (g.planted && !out.quiet) std::cerr << "planted mask: " << g.planted->str() << "\n";
  return kFeasible;
}

int cmd_validate(const std::string& file, const std::string& alloc_file, const Output& out) {
  Instance inst = load_instance(file);
  auto parts = harness::parse_allocation(read_file(alloc_file));
  auto v = harness::validate(inst, parts);
  Json report;
  report["verdict"] = v.pass() ? "pass" : "fail";
  report["failures"] = v.failures;
  out.emit(report);
  return v.pass() ? kFeasible : kInfeasible;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_internal(e.kind()) ? kInternalError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

int cmd_batch(const std::vector<std::string>& files, std::size_t gen_count, std::uint64_t seed, std::size_t n,
              std::int64_t denom_cap, std::size_t jobs, const Output& out) {
  Stopwatch sw;
  std::vector<std::function<Instance()>> work;
  for (const auto& f : files) work.emplace_back([f] { return load_instance(f); });
  for (std::size_t i = 0; i < gen_count; ++i) {
    const auto mode = static_cast<harness::GenMode>(i % 3);
    work.emplace_back([=] { return harness::generate(seed + i, 1 + (seed + i) % n, mode, denom_cap).instance; });
  }
  std::vector<int> codes(work.size(), 0);
  jobs = std::max<std::size_t>(1, jobs);
  for (std::size_t begin = 0; begin < work.size(); begin += jobs) {
    std::vector<std::future<int>> pending;
    for (std::size_t i = begin; i < std::min(work.size(), begin + jobs); ++i) {
      pending.push_back(std::async(std::launch::async, [&work, i] {
        return run_guarded([&] {
          Instance inst = work[i]();
          int code = kFeasible;
          solve_report(inst, code);
          return code;
        });
      }));
    }
    for (std::size_t i = 0; i < pending.size(); ++i) codes[begin + i] = pending[i].get();
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  for (int c : codes) ++counts[c];
  Json report = {{"instances", work.size()},
                 {"feasible", counts[kFeasible]},
                 {"infeasible", counts[kInfeasible]},
                 {"input_errors", counts[kInputError]},
                 {"internal_errors", counts[kInternalError]},
                 {"timing_ms", sw.ms()}};
  report["verdict"] = counts[kInternalError] ? "internal-error" : (counts[kInputError] ? "input-error" : "ok");
  out.emit(report);
  if (counts[kInternalError]) return kInternalError;
  if (counts[kInputError]) return kInputError;
  return kFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact measure-space matching: feasibility, construction and discretization emulation"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("-q,--quiet", out.quiet, "Print only the verdict");
  app.add_option("-o,--output", out.path, "Write the report to a file");

  std::string file, second, xi;
  std::size_t steps = 3;
  std::uint64_t seed = 1;
  std::size_t n = 2;
  std::string mode = "feasible";
  std::int64_t denom_cap = 64;
  std::vector<std::string> files;
  std::size_t gen_count = 0, jobs = 1;

  auto* check = app.add_subcommand("check", "Decide the matching condition and print a certificate");
  check->add_option("instance", file, "Instance file")->required();
  auto* solve = app.add_subcommand("solve", "Construct disjoint B_k exactly, or print a violating set");
  solve->add_option("instance", file, "Instance file")->required();
  auto* emulate = app.add_subcommand("emulate", "Discretize at one xi and solve the block matching");
  emulate->add_option("instance", file, "Instance file")->required();
  emulate->add_option("--xi", xi, "Block size (defaults to the positivity threshold)");
  auto* refine_cmd = app.add_subcommand("refine", "Run the nested xi/2^i refinement sequence");
  refine_cmd->add_option("instance", file, "Instance file")->required();
  refine_cmd->add_option("--xi", xi, "Initial block size (defaults to the threshold)");
  refine_cmd->add_option("--steps", steps, "Number of halvings T");
  auto* discrete = app.add_subcommand("discrete", "Solve a finite disjoint-subsets instance");
  discrete->add_option("instance", file, "Discrete instance file")->required();
  discrete->add_option("--xi", xi, "Uniform point weight");
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--n", n, "Number of sets");
  gen->add_option("--mode", mode, "feasible|infeasible|boundary");
  gen->add_option("--denom-cap", denom_cap, "Largest endpoint denominator");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force condition check by direct set algebra");
  oracle_cmd->add_option("instance", file, "Instance file")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Validate an allocation report against an instance");
  validate_cmd->add_option("instance", file, "Instance file")->required();
  validate_cmd->add_option("allocation", second, "Report containing an \"allocation\" array")->required();
  auto* batch = app.add_subcommand("batch", "Solve and validate many instances");
  batch->add_option("instances", files, "Instance files");
  batch->add_option("--generate", gen_count, "Also generate this many instances (modes cycle)");
  batch->add_option("--seed", seed, "First generator seed");
  batch->add_option("--n", n, "Largest n for generated instances");
  batch->add_option("--denom-cap", denom_cap, "Largest endpoint denominator");
  batch->add_option("--jobs", jobs, "Instances solved concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  return run_guarded([&] {
    if (*check) return cmd_check(file, out);
    if (*solve) return cmd_solve(file, out);
    if (*emulate) return cmd_emulate(file, xi, out);
    if (*refine_cmd) return cmd_refine(file, xi, steps, out);
    if (*discrete) return cmd_discrete(file, xi, out);
    if (*gen) return cmd_gen(seed, n, mode, denom_cap, out);
    if (*oracle_cmd) return cmd_oracle(file, out);
    if (*validate_cmd) return cmd_validate(file, second, out);
    if (*batch) return cmd_batch(files, gen_count, seed, n, denom_cap, jobs, out);
    return kInputError;
  });
}
