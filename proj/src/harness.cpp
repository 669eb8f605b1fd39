#include "semalloc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "semalloc/baselines.hpp"

namespace semalloc {

using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Prop: return "Prop";
    case Algorithm::TC: return "TC";
    case Algorithm::FSC: return "FSC";
    case Algorithm::ARB: return "ARB";
    case Algorithm::NUA: return "NUA";
    case Algorithm::FAN: return "FAN";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : all_algorithms()) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected Prop|TC|FSC|ARB|NUA|FAN)");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::Prop, Algorithm::TC,  Algorithm::FSC,
          Algorithm::ARB,  Algorithm::NUA, Algorithm::FAN};
}

Assignment run_algorithm(Algorithm a, TableCache& cache, std::optional<Allocator> allocator) {
  switch (a) {
    case Algorithm::Prop: return associate(cache, allocator);
    case Algorithm::TC: return run_baseline(BaselineKind::TC, cache);
    case Algorithm::FSC: return run_baseline(BaselineKind::FSC, cache);
    case Algorithm::ARB: return run_baseline(BaselineKind::ARB, cache);
    case Algorithm::NUA:
      if (allocator) {
        const Scenario& s = cache.scenario();
        return assemble_assignment(s, cache.get(SchedulingScheme::Adaptive), nua_assoc(s),
                                   *allocator);
      }
      return run_baseline(BaselineKind::NUA, cache);
    case Algorithm::FAN: return run_baseline(BaselineKind::FAN, cache);
  }
  throw std::invalid_argument("unknown algorithm");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::NumBs: return "num_bs";
    case SweepAxis::NumWd: return "num_wd";
    case SweepAxis::MaxDelay: return "max_delay";
    case SweepAxis::EnergyBudget: return "energy_budget";
  }
  return "unknown";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  for (SweepAxis a : {SweepAxis::None, SweepAxis::NumBs, SweepAxis::NumWd, SweepAxis::MaxDelay,
                      SweepAxis::EnergyBudget}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

GenConfig apply_sweep(GenConfig base, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::None: break;
    case SweepAxis::NumBs: base.num_bs = static_cast<int>(std::lround(value)); break;
    case SweepAxis::NumWd: base.num_wd = static_cast<int>(std::lround(value)); break;
    case SweepAxis::MaxDelay: base.max_delay_s = value; break;
    case SweepAxis::EnergyBudget: base.energy_budget_j = value; break;
  }
  return base;
}

void check(const ExperimentSpec& spec) {
  if (spec.seeds < 1) throw std::invalid_argument("experiment needs at least one seed");
  if (spec.algorithms.empty()) throw std::invalid_argument("experiment needs an algorithm");
  if (spec.axis != SweepAxis::None && spec.values.empty()) {
    throw std::invalid_argument("sweep axis " + to_string(spec.axis) + " has no values");
  }
  for (double v : spec.axis == SweepAxis::None ? std::vector<double>{0.0} : spec.values) {
    check(apply_sweep(spec.base, spec.axis, v));
  }
}

namespace {

std::string fixed_compute_name(FixedCompute f) {
  return f == FixedCompute::HalfDataSize ? "half_data" : "half_model";
}

FixedCompute fixed_compute_from(const std::string& s) {
  if (s == "half_data") return FixedCompute::HalfDataSize;
  if (s == "half_model") return FixedCompute::HalfMaxModel;
  throw std::invalid_argument("fsc_compute must be half_data or half_model");
}

// Shortest decimal that parses back to the same double.
std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_json(const ExperimentSpec& spec) {
  json algs = json::array();
  for (Algorithm a : spec.algorithms) algs.push_back(to_string(a));
  json j{
      {"schema", "semalloc.experiment"},
      {"version", kExperimentSchemaVersion},
      {"name", spec.name},
      {"base", json::parse(to_json(spec.base))},
      {"utility", to_string(spec.kind)},
      {"algorithms", algs},
      {"seeds", spec.seeds},
      {"base_seed", spec.base_seed},
      {"sweep", {{"axis", to_string(spec.axis)}, {"values", spec.values}}},
      {"allocator", spec.allocator ? json(to_string(*spec.allocator)) : json(nullptr)},
      {"fsc_compute", fixed_compute_name(spec.fixed_compute)},
      {"record_wall_time", spec.record_wall_time},
      {"threads", spec.threads},
  };
  return j.dump(2);
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "semalloc.experiment") {
    throw std::invalid_argument("not a semalloc experiment spec (schema tag missing)");
  }
  if (j.value("version", 0) != kExperimentSchemaVersion) {
    throw std::invalid_argument("unsupported experiment spec version");
  }
  try {
    ExperimentSpec spec;
    for (const auto& [key, v] : j.items()) {
      if (key == "schema" || key == "version") continue;
      if (key == "name") spec.name = v.get<std::string>();
      else if (key == "base") spec.base = gen_config_from_json(v.dump());
      else if (key == "utility") spec.kind = utility_kind_from_string(v.get<std::string>());
      else if (key == "algorithms") {
        spec.algorithms.clear();
        for (const auto& a : v) spec.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
      } else if (key == "seeds") spec.seeds = v.get<int>();
      else if (key == "base_seed") spec.base_seed = v.get<std::uint64_t>();
      else if (key == "sweep") {
        spec.axis = sweep_axis_from_string(v.value("axis", "none"));
        spec.values = v.value("values", std::vector<double>{});
      } else if (key == "allocator") {
        if (!v.is_null()) spec.allocator = allocator_from_string(v.get<std::string>());
      } else if (key == "fsc_compute") spec.fixed_compute = fixed_compute_from(v.get<std::string>());
      else if (key == "record_wall_time") spec.record_wall_time = v.get<bool>();
      else if (key == "threads") spec.threads = v.get<unsigned>();
      else throw std::invalid_argument("unknown experiment spec key '" + key + "'");
    }
    check(spec);
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open experiment spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return experiment_spec_from_json(buf.str());
}

std::vector<std::string> preset_names() { return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}; }

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  if (name == "fig3" || name == "fig5") return spec;
  if (name == "fig4") {
    spec.kind = UtilityKind::GeneralReciprocal;
    return spec;
  }
  if (name == "fig6") {
    spec.axis = SweepAxis::NumBs;
    spec.values = {3, 4, 5, 6, 7, 8};
    return spec;
  }
  if (name == "fig7") {
    spec.axis = SweepAxis::NumWd;
    spec.values = {10, 20, 30, 40, 50};
    return spec;
  }
  if (name == "fig8") {
    spec.axis = SweepAxis::MaxDelay;
    spec.values = {5e-3, 10e-3, 15e-3, 20e-3};
    return spec;
  }
  if (name == "fig9") {
    spec.axis = SweepAxis::EnergyBudget;
    spec.values = {1e-3, 2e-3, 3e-3, 4e-3};
    return spec;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

ExperimentResult run(const ExperimentSpec& spec) {
  check(spec);
  const std::vector<double> values =
      spec.axis == SweepAxis::None ? std::vector<double>{0.0} : spec.values;
  const std::string axis = to_string(spec.axis);
  const std::size_t cells = values.size() * static_cast<std::size_t>(spec.seeds);

  struct CellOutput {
    std::vector<ResultRow> rows;
    std::size_t violations = 0;
    std::vector<std::string> errors;
  };
  std::vector<CellOutput> out(cells);

  // Parallel across cells; each cell builds its tables on the calling worker.
  parallel_for(cells, spec.threads, [&](std::size_t cell) {
    const std::size_t vi = cell / static_cast<std::size_t>(spec.seeds);
    const auto replicate = static_cast<std::uint64_t>(cell % static_cast<std::size_t>(spec.seeds));
    const std::uint64_t seed = spec.base_seed + replicate;
    CellOutput& co = out[cell];
    auto row = [&](const std::string& alg, std::string scope, double u, double ms) {
      co.rows.push_back({axis, values[vi], static_cast<long long>(seed), alg, std::move(scope), u,
                         spec.record_wall_time ? ms : 0.0});
    };
    Scenario scenario;
    try {
      GenConfig cfg = apply_sweep(spec.base, spec.axis, values[vi]);
      cfg.seed = seed;
      scenario = generate(cfg);
    } catch (const std::exception& e) {
      for (Algorithm a : spec.algorithms) row(to_string(a), kErrorScope, NAN, 0.0);
      co.errors.push_back("generate(sweep=" + format_double(values[vi]) +
                          ", seed=" + std::to_string(seed) + "): " + e.what());
      return;
    }
    TableCache cache(scenario, spec.kind, spec.fixed_compute, 1);
    for (Algorithm a : spec.algorithms) {
      const std::string name = to_string(a);
      const auto start = std::chrono::steady_clock::now();
      try {
        const Assignment result = run_algorithm(a, cache, spec.allocator);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        const auto violations = validate_assignment(result, scenario);
        if (!violations.empty()) {
          co.violations += violations.size();
          co.errors.push_back(name + " (sweep=" + format_double(values[vi]) +
                              ", seed=" + std::to_string(seed) + "): " +
                              std::to_string(violations.size()) + " constraint violation(s), first " +
                              to_string(violations.front().kind));
          row(name, kErrorScope, NAN, ms);
        }
        const auto per_bs = per_bs_utility(result, scenario.num_bs());
        for (std::size_t m = 0; m < per_bs.size(); ++m) row(name, "BS" + std::to_string(m), per_bs[m], ms);
        row(name, kTotalScope, result.total_utility, ms);
      } catch (const std::exception& e) {
        row(name, kErrorScope, NAN, 0.0);
        co.errors.push_back(name + " (sweep=" + format_double(values[vi]) +
                            ", seed=" + std::to_string(seed) + "): " + e.what());
      }
    }
  });

  ExperimentResult result;
  for (auto& co : out) {
    result.rows.insert(result.rows.end(), co.rows.begin(), co.rows.end());
    result.violations += co.violations;
    result.errors.insert(result.errors.end(), co.errors.begin(), co.errors.end());
  }

  // Means over seeds, keyed by (sweep index, algorithm index, scope).
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::pair<double, double>> sums;
  std::map<std::tuple<std::size_t, std::size_t, std::string>, int> counts;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> order;
  for (const auto& r : result.rows) {
    if (r.scope == kErrorScope) continue;
    const auto vi = static_cast<std::size_t>(
        std::find(values.begin(), values.end(), r.sweep_value) - values.begin());
    const auto ai = static_cast<std::size_t>(
        std::find(spec.algorithms.begin(), spec.algorithms.end(), algorithm_from_string(r.algorithm)) -
        spec.algorithms.begin());
    auto key = std::make_tuple(vi, ai, r.scope);
    if (!counts.count(key)) order.push_back(key);
    sums[key].first += r.utility;
    sums[key].second += r.wall_ms;
    ++counts[key];
  }
  for (const auto& key : order) {
    const auto& [vi, ai, scope] = key;
    const int n = counts[key];
    result.aggregates.push_back({axis, values[vi], kMeanSeed, to_string(spec.algorithms[ai]), scope,
                                 sums[key].first / n, sums[key].second / n});
  }
  return result;
}

std::optional<double> mean_total(const ExperimentResult& r, Algorithm a, double sweep_value) {
  const std::string name = to_string(a);
  for (const auto& row : r.aggregates) {
    if (row.algorithm == name && row.scope == kTotalScope && row.sweep_value == sweep_value) {
      return row.utility;
    }
  }
  return std::nullopt;
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "sweep_axis,sweep_value,seed,algorithm,scope,utility,wall_ms\n";
  auto emit = [&](const ResultRow& row) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", row.wall_ms);
    os << row.sweep_axis << ',' << (row.sweep_axis == "none" ? "" : format_double(row.sweep_value))
       << ',' << (row.seed == kMeanSeed ? std::string("mean") : std::to_string(row.seed)) << ','
       << row.algorithm << ',' << row.scope << ',' << format_double(row.utility) << ',' << ms
       << '\n';
  };
  for (const auto& row : r.rows) emit(row);
  for (const auto& row : r.aggregates) emit(row);
  return os.str();
}

void emit_csv(const ExperimentResult& r, const ExperimentSpec& spec,
              const std::filesystem::path& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_csv(r);
    if (!out) throw std::runtime_error("failed writing " + path.string());
  }
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json meta{{"spec", json::parse(to_json(spec))},
            {"library_version", SEMALLOC_VERSION},
            {"generated_at", stamp},
            {"violations", r.violations},
            {"errors", r.errors}};
  auto meta_path = path;
  meta_path += ".meta.json";
  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + meta_path.string() + " for writing");
  out << meta.dump(2) << '\n';
}

}  // namespace semalloc
