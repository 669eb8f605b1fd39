// semalloc command-line driver.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "semalloc/assoc.hpp"
#include "semalloc/harness.hpp"
#include "semalloc/oracle.hpp"
#include "semalloc/scenario.hpp"
#include "semalloc/utilmodel.hpp"

using namespace semalloc;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string utility = "concave";
  std::string allocator;
  std::string out;
  unsigned threads = 0;
};

std::optional<Allocator> pick_allocator(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return allocator_from_string(s);
}

void print_report(const char* name, const AssumptionCheck& c) {
  std::printf("  %-22s %s", name, c.pass ? "ok" : "VIOLATED");
  if (!c.pass) std::printf("  worst %.3g at c=%.4g d=%.4g", c.worst_violation, c.at_c, c.at_d);
  std::printf("\n");
}

int cmd_gen(const Common& o, int num_bs, int num_wd) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.num_bs = num_bs;
  cfg.num_wd = num_wd;
  const Scenario s = generate(cfg);
  if (o.out.empty()) {
    std::cout << to_text(s) << '\n';
  } else {
    save(s, o.out);
    std::printf("wrote %s (%zu BS, %zu WD)\n", o.out.c_str(), s.num_bs(), s.num_wd());
  }
  return 0;
}

Scenario scenario_from(const std::string& file, const Common& o) {
  if (!file.empty()) return load(file);
  GenConfig cfg;
  cfg.seed = o.seed;
  return generate(cfg);
}

int cmd_solve(const Common& o, const std::string& file, const std::string& alg_name) {
  const Scenario s = scenario_from(file, o);
  const UtilityKind kind = utility_kind_from_string(o.utility);
  const Algorithm alg = algorithm_from_string(alg_name);
  const auto start = std::chrono::steady_clock::now();
  TableCache cache(s, kind, FixedCompute::HalfMaxModel, o.threads);
  const Assignment a = run_algorithm(alg, cache, pick_allocator(o.allocator));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::printf("algorithm %s, utility %s, %zu BS, %zu WD\n", alg_name.c_str(), o.utility.c_str(),
              s.num_bs(), s.num_wd());
  const auto per_bs = per_bs_utility(a, s.num_bs());
  for (std::size_t m = 0; m < per_bs.size(); ++m) {
    int members = 0;
    int rbs = 0;
    for (std::size_t n = 0; n < s.num_wd(); ++n) {
      if (a.association[n] == m) {
        ++members;
        rbs += a.rb_counts[n];
      }
    }
    std::printf("  BS%-3zu %3d WD  %4d/%-4d RB  utility %.6f\n", m, members, rbs,
                s.base_stations[m].rb_count, per_bs[m]);
  }
  std::printf("total utility %.6f", a.total_utility);
  if (a.upper_bound) std::printf("  (all-attached bound %.6f)", *a.upper_bound);
  std::printf("\n%.3f s\n", secs);

  const auto violations = validate_assignment(a, s);
  for (const auto& v : violations) {
    std::printf("violation: %s at %zu (%.3g)\n", to_string(v.kind).c_str(), v.index, v.magnitude);
  }
  return violations.empty() ? 0 : 1;
}

int cmd_experiment(const Common& o, const std::string& spec_file, const std::string& preset_name,
                   int seeds, bool strict, bool no_timing, bool seed_given, bool utility_given,
                   bool allocator_given) {
  if (spec_file.empty() == preset_name.empty()) {
    throw CLI::ValidationError("experiment", "give exactly one of SPEC or --preset");
  }
  ExperimentSpec spec = spec_file.empty() ? preset(preset_name) : load_experiment_spec(spec_file);
  if (seed_given) spec.base_seed = o.seed;
  if (utility_given) spec.kind = utility_kind_from_string(o.utility);
  if (allocator_given) spec.allocator = pick_allocator(o.allocator);
  if (seeds > 0) spec.seeds = seeds;
  if (no_timing) spec.record_wall_time = false;
  spec.threads = o.threads;
  check(spec);

  const ExperimentResult r = run(spec);
  if (o.out.empty()) {
    std::cout << to_csv(r);
  } else {
    emit_csv(r, spec, o.out);
    std::fprintf(stderr, "wrote %s (%zu rows)\n", o.out.c_str(), r.rows.size() + r.aggregates.size());
  }
  for (const auto& e : r.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
  return strict && !r.errors.empty() ? 2 : 0;
}

int cmd_oracle_check(const Common& o, int instances, double ratio) {
  const UtilityKind kind = utility_kind_from_string(o.utility);
  int failures = 0;
  double worst = 1.0;
  for (int i = 0; i < instances; ++i) {
    GenConfig cfg;
    cfg.num_bs = 2;
    cfg.num_wd = 3;
    cfg.rb_choices = {2, 3, 4};
    cfg.seed = o.seed + static_cast<std::uint64_t>(i);
    const Scenario s = generate(cfg);
    const Assignment a = associate(s, kind, pick_allocator(o.allocator), o.threads);
    const OracleResult exact = exact_solve(s, kind);
    const double r = exact.optimum > 0.0 ? a.total_utility / exact.optimum : 1.0;
    worst = std::min(worst, r);
    const bool ok = r >= ratio;
    failures += !ok;
    std::printf("seed %-6llu proposed %.6f  oracle %.6f  ratio %.4f %s\n",
                static_cast<unsigned long long>(cfg.seed), a.total_utility, exact.optimum, r,
                ok ? "" : "FAIL");
  }
  std::printf("%d/%d within %.2f of the optimum (worst ratio %.4f)\n", instances - failures,
              instances, ratio, worst);
  return failures ? 1 : 0;
}

int cmd_validate(const Common& o, const std::string& file) {
  const Scenario s = scenario_from(file, o);
  const UtilityKind kind = utility_kind_from_string(o.utility);
  bool all_pass = true;
  for (const auto& wd : s.devices) {
    const AssumptionReport r = validate_assumptions(wd.app, kind, SamplingGrid::full(wd.app));
    std::printf("WD%d\n", wd.id);
    print_report("monotone+concave", r.monotone_concave);
    print_report("compute supermodular", r.compute_supermodular);
    print_report("data scaling", r.data_scaling);
    all_pass = all_pass && r.monotone_concave.pass && r.compute_supermodular.pass &&
               r.data_scaling.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint user association and resource allocation for semantic multi-cell networks"};
  app.set_version_flag("--version", SEMALLOC_VERSION);
  app.require_subcommand(1);

  Common o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Scenario seed (experiments: base seed)");
    sub->add_option("--utility", o.utility, "Utility kind")
        ->check(CLI::IsMember({"concave", "general"}));
    sub->add_option("--allocator", o.allocator, "RB allocator (default depends on utility)")
        ->check(CLI::IsMember({"greedy", "dp"}));
    sub->add_option("--out", o.out, "Output file");
    sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
  };

  auto* gen = app.add_subcommand("gen", "Generate a scenario file");
  add_common(gen);
  int num_bs = 5;
  int num_wd = 30;
  gen->add_option("--bs", num_bs, "Number of base stations")->check(CLI::PositiveNumber);
  gen->add_option("--wd", num_wd, "Number of wireless devices")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Run one algorithm on one scenario");
  add_common(solve);
  std::string scenario_file;
  std::string alg = "Prop";
  solve->add_option("scenario", scenario_file, "Scenario file (default: generate from --seed)");
  solve->add_option("--algorithm", alg, "Prop, TC, FSC, ARB, NUA or FAN");

  auto* exp = app.add_subcommand("experiment", "Run an experiment spec and write CSV");
  add_common(exp);
  std::string spec_file;
  std::string preset_name;
  int seeds = 0;
  bool strict = false;
  bool no_timing = false;
  exp->add_option("spec", spec_file, "Experiment spec file");
  exp->add_option("--preset", preset_name, "Built-in spec")->check(CLI::IsMember(preset_names()));
  exp->add_option("--seeds", seeds, "Override the number of seeds");
  exp->add_flag("--strict", strict, "Exit nonzero if any run failed");
  exp->add_flag("--no-timing", no_timing, "Write 0 in the wall_ms column");

  auto* oc = app.add_subcommand("oracle-check", "Compare against brute force on tiny instances");
  add_common(oc);
  int instances = 20;
  double ratio = 0.95;
  oc->add_option("--instances", instances, "Number of instances")->check(CLI::PositiveNumber);
  oc->add_option("--ratio", ratio, "Required fraction of the optimum");

  auto* val = app.add_subcommand("validate", "Check utility assumptions for every device");
  add_common(val);
  std::string val_file;
  val->add_option("scenario", val_file, "Scenario file (default: generate from --seed)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(o, num_bs, num_wd);
    if (solve->parsed()) return cmd_solve(o, scenario_file, alg);
    if (exp->parsed()) {
      return cmd_experiment(o, spec_file, preset_name, seeds, strict, no_timing,
                            exp->count("--seed") > 0, exp->count("--utility") > 0,
                            exp->count("--allocator") > 0);
    }
    if (oc->parsed()) return cmd_oracle_check(o, instances, ratio);
    if (val->parsed()) return cmd_validate(o, val_file);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "semalloc: %s\n", e.what());
    return 1;
  }
  return 0;
}
