#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "semalloc/netmodel.hpp"

// Seeded scenario generation and the versioned scenario file format.
namespace semalloc {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

enum class ShadowingMode { LogNormal, ConstantOffset };

struct GenConfig {
  int num_bs = 5;
  int num_wd = 30;
  double area_m = 500.0;
  std::uint64_t seed = 1;

  std::vector<int> rb_choices{25, 50, 75, 100};
  double rb_bandwidth_hz = 0.2e6;
  double max_delay_s = 10e-3;
  double energy_budget_j = 2e-3;
  Range max_freq_hz{1e9, 3e9};
  double max_power_w = 0.2;
  Range energy_coeff{1e-28, 1e-27};
  double noise_power_w = 1e-13;
  Range interference_w{1e-13, 1e-12};

  Range eta1{0.05, 0.08};
  Range eta2{0.9, 0.95};
  Range c_max_cycles{5e6, 10e6};
  Range beta1{-0.75, -0.6};
  Range beta2{10.0, 20.0};
  Range beta3{0.9, 0.95};
  Range d_max_bits{0.15e6, 0.25e6};
  Range raw_data_bits{0.4e6, 0.8e6};
  LogBase log_base = LogBase::Natural;

  // Pathloss in dB: pl_intercept_db + pl_slope_db * log10(distance in km).
  double pl_intercept_db = 128.1;
  double pl_slope_db = 37.6;
  double shadowing_db = 6.0;  // std dev (log-normal) or fixed offset
  ShadowingMode shadowing = ShadowingMode::LogNormal;
  double min_distance_m = 1.0;

  bool operator==(const GenConfig&) const = default;
};

// Throws std::invalid_argument on a degenerate configuration.
void check(const GenConfig& cfg);

double pathloss_db(double distance_m, double intercept_db = 128.1, double slope_db = 37.6);
double gain_from_loss_db(double loss_db);

// Pure function of cfg. Each base station, device and link draws from its own
// stream keyed by (seed, entity), so adding devices leaves existing ones as
// they were.
Scenario generate(const GenConfig& cfg);

// JSON echo of a configuration, and the inverse. Unknown keys are rejected.
std::string to_json(const GenConfig& cfg);
GenConfig gen_config_from_json(const std::string& text);

inline constexpr int kScenarioSchemaVersion = 1;

class ScenarioIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaVersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_text(const Scenario& s);
// Throws ScenarioIoError on malformed content, SchemaVersionError on a
// version this build does not read.
Scenario from_text(const std::string& text);

void save(const Scenario& s, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

}  // namespace semalloc
