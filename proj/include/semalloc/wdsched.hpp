#pragma once

#include <optional>
#include <vector>

#include "semalloc/netmodel.hpp"
#include "semalloc/table.hpp"
#include "semalloc/utilmodel.hpp"

namespace semalloc {

// Frequencies f with lo < f <= hi. Empty when hi <= lo.
struct FreqInterval {
  double lo_hz = 0.0;
  double hi_hz = 0.0;

  bool empty() const { return !(hi_hz > lo_hz); }
  bool contains(double f) const { return f > lo_hz && f <= hi_hz; }
};

// Per-RB transmit capacity at a compute workload, and the CPU frequency that
// achieves it.
struct Capacity {
  double bits_per_rb = 0.0;
  double freq_hz = 0.0;
};

// Optimal scheduling of one device on one base station: given an RB count,
// pick compute workload c, CPU frequency f, transmit power P and data size d
// to maximize the application utility under the deadline and energy budget.
//
// For a fixed (c, f) the whole remaining window T - c/f is used for
// transmission and the leftover energy sets the power, capped at P_max:
//   P(c, f) = min((E - c*gamma*f^2) / (T - c/f), P_max)
//   d(c, f, z) = z * W * (T - c/f) * log2(1 + h * P(c, f) / (sigma^2 + I))
// d is linear in z, so d_max(c, z) = z * g(c) with g(c) = max_f d(c, f, 1).
class WdScheduler {
 public:
  static constexpr int kGridPoints = 64;
  static constexpr double kRelTol = 1e-8;

  WdScheduler(const WirelessDevice& wd, const LinkBudget& link, UtilityKind kind);

  // Power that exhausts the energy budget over the remaining window.
  // nullopt when f <= c/T or the computation alone overspends the budget.
  std::optional<double> tight_power(double c, double f) const;
  // tight_power capped at P_max. Same domain.
  std::optional<double> transmit_power(double c, double f) const;

  FreqInterval feasible_freq_interval(double c) const;

  // Throws std::domain_error when f lies outside feasible_freq_interval(c).
  double d_given_f(double c, double f, int z) const;

  // nullopt when no frequency is feasible at this workload.
  std::optional<Capacity> g_of_c(double c) const;

  // Largest useful workload: min(C^a, sup{c : interval nonempty}).
  double max_compute_cycles() const;

  ScheduleDecision optimal_schedule(int z) const;
  UtilityTable utility_table(int k_max) const;

  const WirelessDevice& device() const { return wd_; }
  const LinkBudget& link() const { return link_; }
  UtilityKind kind() const { return kind_; }

 private:
  struct CGrid {
    std::vector<double> c;
    std::vector<double> g;  // 0 where infeasible
  };
  CGrid make_grid() const;
  double objective(double c, double g, int z) const;
  double objective(double c, int z) const;
  ScheduleDecision solve(int z, const CGrid& grid, std::optional<double> warm_c) const;
  ScheduleDecision decision_at(double c, int z) const;

  WirelessDevice wd_;
  LinkBudget link_;
  UtilityKind kind_;
  double snr_per_watt_;
};

}  // namespace semalloc
