#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "semalloc/netmodel.hpp"
#include "semalloc/table.hpp"
#include "semalloc/utilmodel.hpp"

namespace testsupport {

using semalloc::UtilityTable;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

 private:
  std::mt19937_64 eng_;
};

// Non-decreasing table with non-increasing increments, u(0) = 0.
inline UtilityTable concave_table(Rng& rng, int k) {
  std::vector<double> inc(k);
  for (auto& v : inc) v = rng.uniform(0.0, 1.0);
  std::sort(inc.begin(), inc.end(), std::greater<>());
  std::vector<double> vals(k + 1, 0.0);
  for (int z = 1; z <= k; ++z) vals[z] = vals[z - 1] + inc[z - 1];
  return UtilityTable::from_values(vals);
}

// Non-decreasing table with arbitrary increments, u(0) = 0.
inline UtilityTable monotone_table(Rng& rng, int k) {
  std::vector<double> vals(k + 1, 0.0);
  for (int z = 1; z <= k; ++z) {
    vals[z] = vals[z - 1] + (rng.uniform(0.0, 1.0) < 0.4 ? 0.0 : rng.uniform(0.0, 3.0));
  }
  return UtilityTable::from_values(vals);
}

// Best total over every split of at most k RBs.
inline double enumerate_best(const std::vector<UtilityTable>& tables, int k) {
  double best = 0.0;
  std::function<void(std::size_t, int, double)> rec = [&](std::size_t j, int left, double acc) {
    if (j == tables.size()) {
      best = std::max(best, acc);
      return;
    }
    for (int z = 0; z <= left; ++z) rec(j + 1, left - z, acc + tables[j].at(z));
  };
  rec(0, k, 0.0);
  return best;
}

inline semalloc::WirelessDevice reference_device() {
  semalloc::WirelessDevice wd;
  wd.max_freq_hz = 2e9;
  wd.max_power_w = 0.2;
  wd.energy_budget_j = 2e-3;
  wd.energy_coeff = 5e-28;
  return wd;
}

inline semalloc::LinkBudget reference_link(double gain = 1e-10) {
  return {gain, 1e-13, 5e-13, 2e5, 1e-2};
}

// Random device and link drawn from the default generator ranges.
inline void random_pair(Rng& rng, semalloc::WirelessDevice& wd, semalloc::LinkBudget& link,
                        double pl_lo_db = 80.0, double pl_hi_db = 125.0) {
  wd = semalloc::WirelessDevice{};
  wd.max_freq_hz = rng.uniform(1e9, 3e9);
  wd.max_power_w = 0.2;
  wd.energy_budget_j = 2e-3;
  wd.energy_coeff = rng.uniform(1e-28, 1e-27);
  wd.app.eta1 = rng.uniform(0.05, 0.08);
  wd.app.eta2 = rng.uniform(0.9, 0.95);
  wd.app.c_max_cycles = rng.uniform(5e6, 10e6);
  wd.app.beta1 = rng.uniform(-0.75, -0.6);
  wd.app.beta2 = rng.uniform(10.0, 20.0);
  wd.app.beta3 = rng.uniform(0.9, 0.95);
  wd.app.d_max_bits = rng.uniform(0.15e6, 0.25e6);
  wd.app.raw_data_bits = rng.uniform(0.4e6, 0.8e6);
  const double pl_db = rng.uniform(pl_lo_db, pl_hi_db);
  link = {std::pow(10.0, -pl_db / 10), 1e-13, rng.uniform(1e-13, 1e-12), 2e5, 1e-2};
}

// Straight evaluation of the physical model at (c, f, z): spend the deadline
// and energy left after computing on transmission, power capped at P_max.
struct PointEval {
  bool feasible = false;
  double power = 0.0;
  double bits = 0.0;
};

inline PointEval evaluate_point(const semalloc::WirelessDevice& wd,
                                const semalloc::LinkBudget& link, double c, double f, int z) {
  PointEval e;
  const double t_comp = c / f;
  const double e_comp = c * wd.energy_coeff * f * f;
  const double window = link.max_delay_s - t_comp;
  if (f > wd.max_freq_hz || !(window > 0.0) || e_comp > wd.energy_budget_j) return e;
  e.feasible = true;
  e.power = std::min((wd.energy_budget_j - e_comp) / window, wd.max_power_w);
  const double snr = link.gain * e.power / (link.noise_w + link.interference_w);
  e.bits = z * link.rb_bandwidth_hz * window * std::log2(1.0 + snr);
  return e;
}

// Exhaustive n_c x n_f grid over (0, min(C, f_max T)] x (0, f_max].
inline double grid_oracle_utility(const semalloc::WirelessDevice& wd,
                                  const semalloc::LinkBudget& link, int z,
                                  semalloc::UtilityKind kind, int n_c = 500, int n_f = 500) {
  double best = 0.0;
  const double c_top = std::min(wd.app.c_max_cycles, wd.max_freq_hz * link.max_delay_s);
  for (int i = 1; i <= n_c; ++i) {
    const double c = c_top * i / n_c;
    for (int j = 1; j <= n_f; ++j) {
      const double f = wd.max_freq_hz * j / n_f;
      const PointEval e = evaluate_point(wd, link, c, f, z);
      if (!e.feasible) continue;
      const double d = std::min(e.bits, wd.app.d_max_bits);
      if (d <= 0.0) continue;
      best = std::max(best, semalloc::utility(c, d, wd.app, kind));
    }
  }
  return best;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace testsupport
