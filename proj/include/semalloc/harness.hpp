#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semalloc/assoc.hpp"
#include "semalloc/scenario.hpp"
#include "semalloc/tables.hpp"

// Seeded experiment driver: sweeps one generator parameter, runs every
// requested algorithm on every (sweep value, seed) scenario, and records
// per-BS and total utilities.
namespace semalloc {

enum class Algorithm { Prop, TC, FSC, ARB, NUA, FAN };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
std::vector<Algorithm> all_algorithms();

// Runs one algorithm with tables drawn from the cache. The allocator only
// affects Prop (and NUA, which reuses the proposed allocation stage).
Assignment run_algorithm(Algorithm a, TableCache& cache,
                         std::optional<Allocator> allocator = std::nullopt);

enum class SweepAxis { None, NumBs, NumWd, MaxDelay, EnergyBudget };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& s);
// Copy of base with the swept parameter set (SI units for delay and energy).
GenConfig apply_sweep(GenConfig base, SweepAxis axis, double value);

struct ExperimentSpec {
  std::string name = "experiment";
  GenConfig base;
  UtilityKind kind = UtilityKind::ConcaveAccuracy;
  std::vector<Algorithm> algorithms = all_algorithms();
  int seeds = 10;
  std::uint64_t base_seed = 1;  // replicate i uses base_seed + i
  SweepAxis axis = SweepAxis::None;
  std::vector<double> values;  // ignored when axis is None
  std::optional<Allocator> allocator;
  FixedCompute fixed_compute = FixedCompute::HalfMaxModel;
  bool record_wall_time = true;  // false writes 0 so the CSV is byte-stable
  unsigned threads = 0;
};

// Throws std::invalid_argument on an unusable spec.
void check(const ExperimentSpec& spec);

inline constexpr int kExperimentSchemaVersion = 1;

std::string to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const std::string& text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

// Named specs: fig3 (per-BS, concave), fig4 (per-BS, general), fig5 (totals;
// pair with --utility), fig6 (BS count), fig7 (device count), fig8 (delay
// requirement), fig9 (energy budget).
ExperimentSpec preset(const std::string& name);
std::vector<std::string> preset_names();

inline constexpr const char* kTotalScope = "TOTAL";
inline constexpr const char* kErrorScope = "ERROR";
inline constexpr int kMeanSeed = -1;

struct ResultRow {
  std::string sweep_axis;
  double sweep_value = 0.0;
  long long seed = 0;  // kMeanSeed on aggregate rows
  std::string algorithm;
  std::string scope;   // "BS<i>", TOTAL or ERROR
  double utility = 0.0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;        // sorted, one block per (sweep, seed, algorithm)
  std::vector<ResultRow> aggregates;  // means over seeds, same order
  std::size_t violations = 0;         // validate_assignment findings across the run
  std::vector<std::string> errors;
};

ExperimentResult run(const ExperimentSpec& spec);

// Looks up the mean TOTAL for (algorithm, sweep value); nullopt if absent.
std::optional<double> mean_total(const ExperimentResult& r, Algorithm a, double sweep_value = 0.0);

std::string to_csv(const ExperimentResult& r);
// Writes the CSV at `path` and a sibling `<path>.meta.json` echoing the spec,
// library version, timestamp and any errors.
void emit_csv(const ExperimentResult& r, const ExperimentSpec& spec,
              const std::filesystem::path& path);

}  // namespace semalloc
