#include "semalloc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace semalloc {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the distributions in <random>
// are not, so the mappings to doubles live here to keep files reproducible
// across standard libraries.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t kind, std::uint64_t index)
      : engine_(splitmix64(splitmix64(splitmix64(seed) ^ kind) ^ index)) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(const Range& r) { return r.lo + (r.hi - r.lo) * unit(); }
  int pick(const std::vector<int>& choices) {
    const auto i = static_cast<std::size_t>(unit() * static_cast<double>(choices.size()));
    return choices[std::min(i, choices.size() - 1)];
  }
  double normal() {
    const double u1 = 1.0 - unit();  // (0, 1]
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

enum StreamKind : std::uint64_t { kBaseStation = 1, kDevice = 2, kLink = 3 };

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("GenConfig: " + what);
}

void require_range(const Range& r, const std::string& name, bool positive) {
  require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi, name + " must satisfy lo <= hi");
  if (positive) require(r.lo > 0.0, name + " must be positive");
}

}  // namespace

void check(const GenConfig& cfg) {
  require(cfg.num_bs >= 1 && cfg.num_wd >= 1, "num_bs and num_wd must be at least 1");
  require(cfg.area_m > 0.0, "area_m must be positive");
  require(!cfg.rb_choices.empty(), "rb_choices must not be empty");
  for (int k : cfg.rb_choices) require(k >= 1, "rb_choices must be positive");
  require(cfg.rb_bandwidth_hz > 0.0 && cfg.max_delay_s > 0.0 && cfg.energy_budget_j > 0.0 &&
              cfg.max_power_w > 0.0 && cfg.noise_power_w > 0.0,
          "scalar parameters must be positive");
  require_range(cfg.max_freq_hz, "max_freq_hz", true);
  require_range(cfg.energy_coeff, "energy_coeff", true);
  require_range(cfg.interference_w, "interference_w", false);
  require(cfg.interference_w.lo >= 0.0, "interference_w must be non-negative");
  require_range(cfg.eta1, "eta1", true);
  require_range(cfg.eta2, "eta2", true);
  require(cfg.eta2.hi <= 1.0, "eta2 must not exceed 1");
  require_range(cfg.c_max_cycles, "c_max_cycles", true);
  require_range(cfg.beta1, "beta1", false);
  require(cfg.beta1.hi < 0.0, "beta1 must be negative");
  require_range(cfg.beta2, "beta2", true);
  require_range(cfg.beta3, "beta3", true);
  require(cfg.beta3.hi <= 1.0, "beta3 must not exceed 1");
  require(cfg.beta1.lo + cfg.beta3.lo >= 0.0, "beta1 + beta3 must be non-negative");
  require_range(cfg.d_max_bits, "d_max_bits", true);
  require_range(cfg.raw_data_bits, "raw_data_bits", true);
  require(cfg.shadowing_db >= 0.0, "shadowing_db must be non-negative");
  require(cfg.min_distance_m > 0.0, "min_distance_m must be positive");
}

double pathloss_db(double distance_m, double intercept_db, double slope_db) {
  return intercept_db + slope_db * std::log10(distance_m / 1000.0);
}

double gain_from_loss_db(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

Scenario generate(const GenConfig& cfg) {
  check(cfg);
  Scenario s;
  s.seed = cfg.seed;
  s.globals = {cfg.rb_bandwidth_hz, cfg.max_delay_s, cfg.noise_power_w};
  s.provenance = to_json(cfg);

  for (int m = 0; m < cfg.num_bs; ++m) {
    Stream rng(cfg.seed, kBaseStation, static_cast<std::uint64_t>(m));
    BaseStation bs;
    bs.id = m;
    bs.position = {cfg.area_m * rng.unit(), cfg.area_m * rng.unit()};
    bs.rb_count = rng.pick(cfg.rb_choices);
    bs.interference_w = rng.uniform(cfg.interference_w);
    s.base_stations.push_back(bs);
  }
  for (int n = 0; n < cfg.num_wd; ++n) {
    Stream rng(cfg.seed, kDevice, static_cast<std::uint64_t>(n));
    WirelessDevice wd;
    wd.id = n;
    wd.position = {cfg.area_m * rng.unit(), cfg.area_m * rng.unit()};
    wd.max_freq_hz = rng.uniform(cfg.max_freq_hz);
    wd.max_power_w = cfg.max_power_w;
    wd.energy_budget_j = cfg.energy_budget_j;
    wd.energy_coeff = rng.uniform(cfg.energy_coeff);
    auto& app = wd.app;
    app.eta1 = rng.uniform(cfg.eta1);
    app.eta2 = rng.uniform(cfg.eta2);
    app.c_max_cycles = rng.uniform(cfg.c_max_cycles);
    app.beta1 = rng.uniform(cfg.beta1);
    app.beta2 = rng.uniform(cfg.beta2);
    app.beta3 = rng.uniform(cfg.beta3);
    app.d_max_bits = rng.uniform(cfg.d_max_bits);
    app.raw_data_bits = rng.uniform(cfg.raw_data_bits);
    app.log_base = cfg.log_base;
    s.devices.push_back(wd);
  }
  s.gain.assign(cfg.num_bs, std::vector<double>(cfg.num_wd, 0.0));
  for (int m = 0; m < cfg.num_bs; ++m) {
    for (int n = 0; n < cfg.num_wd; ++n) {
      const auto key = (static_cast<std::uint64_t>(m) << 32) | static_cast<std::uint64_t>(n);
      Stream rng(cfg.seed, kLink, key);
      const double dist =
          std::max(cfg.min_distance_m, distance_m(s.base_stations[m].position, s.devices[n].position));
      const double shadow = cfg.shadowing == ShadowingMode::LogNormal
                                ? cfg.shadowing_db * rng.normal()
                                : cfg.shadowing_db;
      // a negative total loss would mean gain above 1
      const double loss = std::max(0.0, pathloss_db(dist, cfg.pl_intercept_db, cfg.pl_slope_db) + shadow);
      s.gain[m][n] = gain_from_loss_db(loss);
    }
  }
  return s;
}

namespace {

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("range must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string log_base_name(LogBase b) { return b == LogBase::Natural ? "natural" : "10"; }

LogBase log_base_from(const std::string& s) {
  if (s == "natural") return LogBase::Natural;
  if (s == "10") return LogBase::Ten;
  throw std::invalid_argument("log_base must be \"natural\" or \"10\"");
}

json gen_config_json(const GenConfig& c) {
  return json{
      {"num_bs", c.num_bs},
      {"num_wd", c.num_wd},
      {"area_m", c.area_m},
      {"seed", c.seed},
      {"rb_choices", c.rb_choices},
      {"rb_bandwidth_hz", c.rb_bandwidth_hz},
      {"max_delay_s", c.max_delay_s},
      {"energy_budget_j", c.energy_budget_j},
      {"max_freq_hz", range_json(c.max_freq_hz)},
      {"max_power_w", c.max_power_w},
      {"energy_coeff", range_json(c.energy_coeff)},
      {"noise_power_w", c.noise_power_w},
      {"interference_w", range_json(c.interference_w)},
      {"eta1", range_json(c.eta1)},
      {"eta2", range_json(c.eta2)},
      {"c_max_cycles", range_json(c.c_max_cycles)},
      {"beta1", range_json(c.beta1)},
      {"beta2", range_json(c.beta2)},
      {"beta3", range_json(c.beta3)},
      {"d_max_bits", range_json(c.d_max_bits)},
      {"raw_data_bits", range_json(c.raw_data_bits)},
      {"log_base", log_base_name(c.log_base)},
      {"pl_intercept_db", c.pl_intercept_db},
      {"pl_slope_db", c.pl_slope_db},
      {"shadowing_db", c.shadowing_db},
      {"shadowing", c.shadowing == ShadowingMode::LogNormal ? "lognormal" : "constant"},
      {"min_distance_m", c.min_distance_m},
  };
}

GenConfig gen_config_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("generator config must be an object");
  GenConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "num_bs") c.num_bs = v.get<int>();
    else if (key == "num_wd") c.num_wd = v.get<int>();
    else if (key == "area_m") c.area_m = v.get<double>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "rb_choices") c.rb_choices = v.get<std::vector<int>>();
    else if (key == "rb_bandwidth_hz") c.rb_bandwidth_hz = v.get<double>();
    else if (key == "max_delay_s") c.max_delay_s = v.get<double>();
    else if (key == "energy_budget_j") c.energy_budget_j = v.get<double>();
    else if (key == "max_freq_hz") c.max_freq_hz = range_from(v);
    else if (key == "max_power_w") c.max_power_w = v.get<double>();
    else if (key == "energy_coeff") c.energy_coeff = range_from(v);
    else if (key == "noise_power_w") c.noise_power_w = v.get<double>();
    else if (key == "interference_w") c.interference_w = range_from(v);
    else if (key == "eta1") c.eta1 = range_from(v);
    else if (key == "eta2") c.eta2 = range_from(v);
    else if (key == "c_max_cycles") c.c_max_cycles = range_from(v);
    else if (key == "beta1") c.beta1 = range_from(v);
    else if (key == "beta2") c.beta2 = range_from(v);
    else if (key == "beta3") c.beta3 = range_from(v);
    else if (key == "d_max_bits") c.d_max_bits = range_from(v);
    else if (key == "raw_data_bits") c.raw_data_bits = range_from(v);
    else if (key == "log_base") c.log_base = log_base_from(v.get<std::string>());
    else if (key == "pl_intercept_db") c.pl_intercept_db = v.get<double>();
    else if (key == "pl_slope_db") c.pl_slope_db = v.get<double>();
    else if (key == "shadowing_db") c.shadowing_db = v.get<double>();
    else if (key == "shadowing") {
      const auto mode = v.get<std::string>();
      if (mode == "lognormal") c.shadowing = ShadowingMode::LogNormal;
      else if (mode == "constant") c.shadowing = ShadowingMode::ConstantOffset;
      else throw std::invalid_argument("shadowing must be \"lognormal\" or \"constant\"");
    } else if (key == "min_distance_m") c.min_distance_m = v.get<double>();
    else throw std::invalid_argument("unknown generator config key '" + key + "'");
  }
  return c;
}

json position_json(const Position& p) { return json::array({p.x_m, p.y_m}); }

Position position_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("position must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string to_json(const GenConfig& cfg) { return gen_config_json(cfg).dump(); }

GenConfig gen_config_from_json(const std::string& text) {
  try {
    return gen_config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("generator config: ") + e.what());
  }
}

std::string to_text(const Scenario& s) {
  json j;
  j["schema"] = "semalloc.scenario";
  j["version"] = kScenarioSchemaVersion;
  j["seed"] = s.seed;
  j["globals"] = {{"rb_bandwidth_hz", s.globals.rb_bandwidth_hz},
                  {"max_delay_s", s.globals.max_delay_s},
                  {"noise_power_w", s.globals.noise_power_w}};
  json bss = json::array();
  for (const auto& bs : s.base_stations) {
    bss.push_back({{"id", bs.id},
                   {"position_m", position_json(bs.position)},
                   {"rb_count", bs.rb_count},
                   {"interference_w", bs.interference_w}});
  }
  j["base_stations"] = bss;
  json wds = json::array();
  for (const auto& wd : s.devices) {
    const auto& a = wd.app;
    wds.push_back({{"id", wd.id},
                   {"position_m", position_json(wd.position)},
                   {"max_freq_hz", wd.max_freq_hz},
                   {"max_power_w", wd.max_power_w},
                   {"energy_budget_j", wd.energy_budget_j},
                   {"energy_coeff", wd.energy_coeff},
                   {"app",
                    {{"eta1", a.eta1},
                     {"eta2", a.eta2},
                     {"c_max_cycles", a.c_max_cycles},
                     {"beta1", a.beta1},
                     {"beta2", a.beta2},
                     {"beta3", a.beta3},
                     {"d_max_bits", a.d_max_bits},
                     {"raw_data_bits", a.raw_data_bits},
                     {"log_base", log_base_name(a.log_base)}}}});
  }
  j["devices"] = wds;
  j["channel_gain"] = s.gain;
  j["provenance"] = s.provenance.empty() ? json(nullptr) : json::parse(s.provenance);
  return j.dump(2) + "\n";
}

Scenario from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ScenarioIoError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "semalloc.scenario") {
    throw ScenarioIoError("not a semalloc scenario document (schema tag missing)");
  }
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    throw SchemaVersionError("scenario has no integer version field");
  }
  const int version = j["version"].get<int>();
  if (version != kScenarioSchemaVersion) {
    throw SchemaVersionError("unsupported scenario version " + std::to_string(version) +
                             " (this build reads version " +
                             std::to_string(kScenarioSchemaVersion) + ")");
  }
  try {
    Scenario s;
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto& g = j.at("globals");
    s.globals = {g.at("rb_bandwidth_hz").get<double>(), g.at("max_delay_s").get<double>(),
                 g.at("noise_power_w").get<double>()};
    for (const auto& b : j.at("base_stations")) {
      s.base_stations.push_back({b.at("id").get<int>(), position_from(b.at("position_m")),
                                 b.at("rb_count").get<int>(), b.at("interference_w").get<double>()});
    }
    for (const auto& w : j.at("devices")) {
      WirelessDevice wd;
      wd.id = w.at("id").get<int>();
      wd.position = position_from(w.at("position_m"));
      wd.max_freq_hz = w.at("max_freq_hz").get<double>();
      wd.max_power_w = w.at("max_power_w").get<double>();
      wd.energy_budget_j = w.at("energy_budget_j").get<double>();
      wd.energy_coeff = w.at("energy_coeff").get<double>();
      const auto& a = w.at("app");
      wd.app.eta1 = a.at("eta1").get<double>();
      wd.app.eta2 = a.at("eta2").get<double>();
      wd.app.c_max_cycles = a.at("c_max_cycles").get<double>();
      wd.app.beta1 = a.at("beta1").get<double>();
      wd.app.beta2 = a.at("beta2").get<double>();
      wd.app.beta3 = a.at("beta3").get<double>();
      wd.app.d_max_bits = a.at("d_max_bits").get<double>();
      wd.app.raw_data_bits = a.at("raw_data_bits").get<double>();
      wd.app.log_base = log_base_from(a.value("log_base", "natural"));
      s.devices.push_back(wd);
    }
    s.gain = j.at("channel_gain").get<std::vector<std::vector<double>>>();
    const auto& prov = j.value("provenance", json(nullptr));
    s.provenance = prov.is_null() ? std::string() : prov.dump();
    check(s);
    return s;
  } catch (const json::exception& e) {
    throw ScenarioIoError(std::string("malformed scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ScenarioIoError(std::string("invalid scenario: ") + e.what());
  }
}

void save(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioIoError("cannot open " + path.string() + " for writing");
  out << to_text(s);
  if (!out) throw ScenarioIoError("failed writing " + path.string());
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioIoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace semalloc
