#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semalloc/utilmodel.hpp"

// Physical system model: entities, channel, and the time/energy relations of
// computing on the device and transmitting over resource blocks. SI units
// throughout (s, J, W, Hz, bits, CPU cycles).
namespace semalloc {

struct GlobalParams {
  double rb_bandwidth_hz = 2.0e5;
  double max_delay_s = 1.0e-2;
  double noise_power_w = 1.0e-13;

  bool operator==(const GlobalParams&) const = default;
};

struct Position {
  double x_m = 0.0;
  double y_m = 0.0;

  bool operator==(const Position&) const = default;
};

double distance_m(const Position& a, const Position& b);

struct BaseStation {
  int id = 0;
  Position position;
  int rb_count = 1;
  double interference_w = 0.0;

  bool operator==(const BaseStation&) const = default;
};

struct WirelessDevice {
  int id = 0;
  Position position;
  double max_freq_hz = 1.0e9;
  double max_power_w = 0.2;
  double energy_budget_j = 2.0e-3;
  double energy_coeff = 1.0e-27;  // E = c * gamma * f^2
  AccuracyParams app;

  bool operator==(const WirelessDevice&) const = default;
};

// Everything the per-device scheduler needs to know about one (WD, BS) link.
struct LinkBudget {
  double gain = 0.0;
  double noise_w = 0.0;
  double interference_w = 0.0;
  double rb_bandwidth_hz = 0.0;
  double max_delay_s = 0.0;

  // Received SNR per watt of transmit power.
  double snr_per_watt() const { return gain / (noise_w + interference_w); }
};

// Immutable problem instance. gain[m][n] is the linear power gain between
// base station m and device n.
struct Scenario {
  GlobalParams globals;
  std::vector<BaseStation> base_stations;
  std::vector<WirelessDevice> devices;
  std::vector<std::vector<double>> gain;
  std::uint64_t seed = 0;
  std::string provenance;  // JSON echo of the generator configuration, may be empty

  std::size_t num_bs() const { return base_stations.size(); }
  std::size_t num_wd() const { return devices.size(); }
  int max_rb_count() const;
  LinkBudget link(std::size_t wd, std::size_t bs) const;

  bool operator==(const Scenario&) const = default;
};

// Throws std::invalid_argument when entity or channel invariants are broken.
void check(const Scenario& s);

double compute_time(double cycles, double freq_hz);
double compute_energy(double cycles, double gamma, double freq_hz);
double link_rate(int rb_count, const GlobalParams& params, double power_w, double gain,
                 double interference_w);
// nullopt when d > 0 must cross a zero-rate link.
std::optional<double> transmit_time(double bits, double rate_bps);
double transmit_energy(double power_w, double seconds);

struct ScheduleDecision {
  double c_cycles = 0.0;
  double freq_hz = 0.0;
  double power_w = 0.0;
  double data_bits = 0.0;
  double utility = 0.0;

  bool operator==(const ScheduleDecision&) const = default;
};

struct Assignment {
  std::vector<std::optional<std::size_t>> association;  // device -> base station index
  std::vector<int> rb_counts;                           // RBs on the associated BS
  std::vector<ScheduleDecision> schedules;
  double total_utility = 0.0;
  // Total utility with every device attached to every BS, when the solver has one.
  std::optional<double> upper_bound;

  static Assignment empty(std::size_t num_wd);
  bool operator==(const Assignment&) const = default;
};

std::vector<double> per_bs_utility(const Assignment& a, std::size_t num_bs);

enum class ViolationKind {
  SizeMismatch,
  UnknownBaseStation,
  NegativeRbCount,
  RbWithoutAssociation,
  RbBudget,
  Delay,
  Energy,
  Frequency,
  Power,
  UtilitySum,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t index = 0;  // device or base station index, depending on kind
  double magnitude = 0.0;
};

// Checks association, RB budgets, deadline, energy and device bounds.
// Relative slack 1e-9 on the continuous constraints.
std::vector<Violation> validate_assignment(const Assignment& a, const Scenario& s);

}  // namespace semalloc
