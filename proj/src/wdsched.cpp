#include "semalloc/wdsched.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semalloc/optimize.hpp"

namespace semalloc {

WdScheduler::WdScheduler(const WirelessDevice& wd, const LinkBudget& link, UtilityKind kind)
    : wd_(wd), link_(link), kind_(kind), snr_per_watt_(link.snr_per_watt()) {}

std::optional<double> WdScheduler::tight_power(double c, double f) const {
  const double t_max = link_.max_delay_s;
  if (c <= 0.0) return wd_.energy_budget_j / t_max;
  if (!(f > 0.0)) return std::nullopt;
  const double window = t_max - c / f;
  const double spare = wd_.energy_budget_j - compute_energy(c, wd_.energy_coeff, f);
  if (!(window > 0.0) || spare < 0.0) return std::nullopt;
  return spare / window;
}

std::optional<double> WdScheduler::transmit_power(double c, double f) const {
  const auto p = tight_power(c, f);
  if (!p) return std::nullopt;
  return std::min(*p, wd_.max_power_w);
}

FreqInterval WdScheduler::feasible_freq_interval(double c) const {
  if (c <= 0.0) return {0.0, wd_.max_freq_hz};
  const double lo = c / link_.max_delay_s;
  const double hi =
      std::min(wd_.max_freq_hz, std::sqrt(wd_.energy_budget_j / (c * wd_.energy_coeff)));
  return {lo, hi};
}

double WdScheduler::d_given_f(double c, double f, int z) const {
  const FreqInterval iv = feasible_freq_interval(c);
  if (c > 0.0 && !iv.contains(f)) {
    throw std::domain_error("d_given_f: frequency outside the feasible interval");
  }
  if (z <= 0) return 0.0;
  const double window = link_.max_delay_s - (c > 0.0 ? c / f : 0.0);
  const double p = *transmit_power(c, f);
  return z * link_.rb_bandwidth_hz * window * std::log2(1.0 + snr_per_watt_ * p);
}

std::optional<Capacity> WdScheduler::g_of_c(double c) const {
  const FreqInterval iv = feasible_freq_interval(c);
  if (iv.empty()) return std::nullopt;
  if (c <= 0.0) return Capacity{d_given_f(0.0, 0.0, 1), 0.0};
  auto per_rb = [&](double f) { return f > iv.lo_hz ? d_given_f(c, f, 1) : 0.0; };
  const Maximum best = grid_golden_maximize(per_rb, iv.lo_hz, iv.hi_hz, kGridPoints, kRelTol);
  return Capacity{best.value, best.x};
}

double WdScheduler::max_compute_cycles() const {
  const double t_max = link_.max_delay_s;
  const double by_deadline = t_max * wd_.max_freq_hz;
  // c/T < sqrt(E / (c gamma))  <=>  c^3 < E T^2 / gamma
  const double by_energy = std::cbrt(wd_.energy_budget_j * t_max * t_max / wd_.energy_coeff);
  return std::min({wd_.app.c_max_cycles, by_deadline, by_energy});
}

double WdScheduler::objective(double c, double g, int z) const {
  if (!(c > 0.0) || !(g > 0.0)) return 0.0;
  return utility(c, std::min(z * g, wd_.app.d_max_bits), wd_.app, kind_);
}

double WdScheduler::objective(double c, int z) const {
  const auto cap = g_of_c(c);
  return cap ? objective(c, cap->bits_per_rb, z) : 0.0;
}

WdScheduler::CGrid WdScheduler::make_grid() const {
  const double hi = max_compute_cycles();
  const double lo = hi * 1e-6;
  CGrid grid;
  grid.c.resize(kGridPoints);
  grid.g.resize(kGridPoints);
  const double step = (hi - lo) / (kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    const double c = i + 1 == kGridPoints ? hi : lo + step * i;
    const auto cap = g_of_c(c);
    grid.c[i] = c;
    grid.g[i] = cap ? cap->bits_per_rb : 0.0;
  }
  return grid;
}

ScheduleDecision WdScheduler::decision_at(double c, int z) const {
  const auto cap = g_of_c(c);
  if (!cap || !(cap->bits_per_rb > 0.0)) return {};
  ScheduleDecision d;
  d.c_cycles = c;
  d.freq_hz = cap->freq_hz;
  const double full = z * cap->bits_per_rb;
  if (full > wd_.app.d_max_bits) {
    // Deliver exactly D^a with the smallest power that fits the window.
    const double window = link_.max_delay_s - c / cap->freq_hz;
    const double spectral = wd_.app.d_max_bits / (z * link_.rb_bandwidth_hz * window);
    d.data_bits = wd_.app.d_max_bits;
    d.power_w = std::min(std::expm1(spectral * std::log(2.0)) / snr_per_watt_,
                         *transmit_power(c, cap->freq_hz));
  } else {
    d.data_bits = full;
    d.power_w = *transmit_power(c, cap->freq_hz);
  }
  d.utility = utility(c, d.data_bits, wd_.app, kind_);
  return d;
}

ScheduleDecision WdScheduler::solve(int z, const CGrid& grid,
                                    std::optional<double> warm_c) const {
  if (z <= 0) return {};
  const int n = static_cast<int>(grid.c.size());
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < n; ++i) {
    const double v = objective(grid.c[i], grid.g[i], z);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  Maximum best{grid.c[best_i], best_v};
  const double a = grid.c[std::max(best_i - 1, 0)];
  const double b = grid.c[std::min(best_i + 1, n - 1)];
  const Maximum polished =
      golden_section_maximize([&](double c) { return objective(c, z); }, a, b, kRelTol);
  if (polished.value > best.value) best = polished;
  if (warm_c) {
    // The objective is pointwise non-decreasing in z, so the previous optimum
    // keeps the table monotone.
    const double v = objective(*warm_c, z);
    if (v > best.value) best = {*warm_c, v};
  }
  if (!(best.value > 0.0)) return {};
  return decision_at(best.x, z);
}

ScheduleDecision WdScheduler::optimal_schedule(int z) const {
  if (z <= 0) return {};
  return solve(z, make_grid(), std::nullopt);
}

UtilityTable WdScheduler::utility_table(int k_max) const {
  UtilityTable table;
  k_max = std::max(k_max, 0);
  table.values.assign(k_max + 1, 0.0);
  table.decisions.assign(k_max + 1, ScheduleDecision{});
  if (k_max == 0) return table;
  const CGrid grid = make_grid();
  std::optional<double> warm;
  for (int z = 1; z <= k_max; ++z) {
    ScheduleDecision d = solve(z, grid, warm);
    if (d.utility < table.values[z - 1]) {
      d = table.decisions[z - 1];  // guards floating-point ties only
    }
    if (d.c_cycles > 0.0) warm = d.c_cycles;
    table.values[z] = d.utility;
    table.decisions[z] = d;
  }
  return table;
}

}  // namespace semalloc
