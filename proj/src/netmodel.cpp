#include "semalloc/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semalloc {

double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

int Scenario::max_rb_count() const {
  int k = 0;
  for (const auto& bs : base_stations) k = std::max(k, bs.rb_count);
  return k;
}

LinkBudget Scenario::link(std::size_t wd, std::size_t bs) const {
  return LinkBudget{gain.at(bs).at(wd), globals.noise_power_w,
                    base_stations.at(bs).interference_w, globals.rb_bandwidth_hz,
                    globals.max_delay_s};
}

void check(const Scenario& s) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("Scenario: " + what);
  };
  require(s.globals.rb_bandwidth_hz > 0.0 && s.globals.max_delay_s > 0.0 &&
              s.globals.noise_power_w > 0.0,
          "global parameters must be positive");
  require(!s.base_stations.empty(), "at least one base station required");
  for (const auto& bs : s.base_stations) {
    require(bs.rb_count >= 1, "base station " + std::to_string(bs.id) + " has no RBs");
    require(bs.interference_w >= 0.0,
            "base station " + std::to_string(bs.id) + " has negative interference");
  }
  for (const auto& wd : s.devices) {
    require(wd.max_freq_hz > 0.0 && wd.max_power_w > 0.0 && wd.energy_budget_j > 0.0 &&
                wd.energy_coeff > 0.0,
            "device " + std::to_string(wd.id) + " has a non-positive bound");
    check(wd.app);
  }
  require(s.gain.size() == s.num_bs(), "channel matrix must have one row per base station");
  for (const auto& row : s.gain) {
    require(row.size() == s.num_wd(), "channel matrix must have one column per device");
    for (double h : row) require(h >= 0.0 && h <= 1.0, "channel gain outside [0, 1]");
  }
}

double compute_time(double cycles, double freq_hz) {
  if (cycles == 0.0) return 0.0;
  if (!(freq_hz > 0.0)) throw std::invalid_argument("compute_time: zero frequency with work");
  return cycles / freq_hz;
}

double compute_energy(double cycles, double gamma, double freq_hz) {
  return cycles * gamma * freq_hz * freq_hz;
}

double link_rate(int rb_count, const GlobalParams& params, double power_w, double gain,
                 double interference_w) {
  if (rb_count <= 0) return 0.0;
  const double snr = power_w * gain / (params.noise_power_w + interference_w);
  return rb_count * params.rb_bandwidth_hz * std::log2(1.0 + snr);
}

std::optional<double> transmit_time(double bits, double rate_bps) {
  if (bits <= 0.0) return 0.0;
  if (!(rate_bps > 0.0)) return std::nullopt;
  return bits / rate_bps;
}

double transmit_energy(double power_w, double seconds) { return power_w * seconds; }

Assignment Assignment::empty(std::size_t num_wd) {
  Assignment a;
  a.association.assign(num_wd, std::nullopt);
  a.rb_counts.assign(num_wd, 0);
  a.schedules.assign(num_wd, ScheduleDecision{});
  return a;
}

std::vector<double> per_bs_utility(const Assignment& a, std::size_t num_bs) {
  std::vector<double> out(num_bs, 0.0);
  for (std::size_t n = 0; n < a.association.size(); ++n) {
    if (a.association[n] && *a.association[n] < num_bs) {
      out[*a.association[n]] += a.schedules[n].utility;
    }
  }
  return out;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::SizeMismatch: return "size-mismatch";
    case ViolationKind::UnknownBaseStation: return "unknown-base-station";
    case ViolationKind::NegativeRbCount: return "negative-rb-count";
    case ViolationKind::RbWithoutAssociation: return "rb-without-association";
    case ViolationKind::RbBudget: return "rb-budget";
    case ViolationKind::Delay: return "delay";
    case ViolationKind::Energy: return "energy";
    case ViolationKind::Frequency: return "frequency";
    case ViolationKind::Power: return "power";
    case ViolationKind::UtilitySum: return "utility-sum";
  }
  return "unknown";
}

std::vector<Violation> validate_assignment(const Assignment& a, const Scenario& s) {
  constexpr double kSlack = 1e-9;
  std::vector<Violation> out;
  const std::size_t n_wd = s.num_wd();
  if (a.association.size() != n_wd || a.rb_counts.size() != n_wd ||
      a.schedules.size() != n_wd) {
    out.push_back({ViolationKind::SizeMismatch, 0, 0.0});
    return out;
  }

  std::vector<long> used(s.num_bs(), 0);
  double utility_sum = 0.0;
  for (std::size_t n = 0; n < n_wd; ++n) {
    const int z = a.rb_counts[n];
    const auto& sched = a.schedules[n];
    utility_sum += sched.utility;
    if (z < 0) out.push_back({ViolationKind::NegativeRbCount, n, static_cast<double>(-z)});
    if (!a.association[n]) {
      if (z != 0) out.push_back({ViolationKind::RbWithoutAssociation, n, static_cast<double>(z)});
      if (sched.utility != 0.0) {
        out.push_back({ViolationKind::UtilitySum, n, std::abs(sched.utility)});
      }
      continue;
    }
    const std::size_t m = *a.association[n];
    if (m >= s.num_bs()) {
      out.push_back({ViolationKind::UnknownBaseStation, n, static_cast<double>(m)});
      continue;
    }
    used[m] += std::max(z, 0);

    const auto& wd = s.devices[n];
    const double t_max = s.globals.max_delay_s;
    if (sched.freq_hz < 0.0 || sched.freq_hz > wd.max_freq_hz * (1.0 + kSlack)) {
      out.push_back({ViolationKind::Frequency, n, sched.freq_hz - wd.max_freq_hz});
    }
    if (sched.power_w < 0.0 || sched.power_w > wd.max_power_w * (1.0 + kSlack)) {
      out.push_back({ViolationKind::Power, n, sched.power_w - wd.max_power_w});
    }
    double t_comp = 0.0;
    if (sched.c_cycles > 0.0) {
      if (!(sched.freq_hz > 0.0)) {
        out.push_back({ViolationKind::Delay, n, INFINITY});
        continue;
      }
      t_comp = compute_time(sched.c_cycles, sched.freq_hz);
    }
    const double rate = link_rate(z, s.globals, sched.power_w, s.gain[m][n],
                                  s.base_stations[m].interference_w);
    const auto t_tx = transmit_time(sched.data_bits, rate);
    if (!t_tx) {
      out.push_back({ViolationKind::Delay, n, INFINITY});
      continue;
    }
    const double t_total = t_comp + *t_tx;
    if (t_total > t_max * (1.0 + kSlack)) {
      out.push_back({ViolationKind::Delay, n, t_total - t_max});
    }
    const double e_total = compute_energy(sched.c_cycles, wd.energy_coeff, sched.freq_hz) +
                           transmit_energy(sched.power_w, *t_tx);
    if (e_total > wd.energy_budget_j * (1.0 + kSlack)) {
      out.push_back({ViolationKind::Energy, n, e_total - wd.energy_budget_j});
    }
  }
  for (std::size_t m = 0; m < s.num_bs(); ++m) {
    if (used[m] > s.base_stations[m].rb_count) {
      out.push_back(
          {ViolationKind::RbBudget, m, static_cast<double>(used[m] - s.base_stations[m].rb_count)});
    }
  }
  const double gap = std::abs(utility_sum - a.total_utility);
  if (gap > 1e-9 * std::max(1.0, std::abs(utility_sum))) {
    out.push_back({ViolationKind::UtilitySum, n_wd, gap});
  }
  return out;
}

}  // namespace semalloc
