#include "semalloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "semalloc/optimize.hpp"

namespace semalloc {

namespace {

struct Point {
  double value = 0.0;
  double c = 0.0;
  double f = 0.0;
};

class InnerProblem {
 public:
  InnerProblem(const WirelessDevice& wd, const LinkBudget& link, int z, UtilityKind kind)
      : wd_(wd), link_(link), z_(z), kind_(kind) {}

  // Utility at (c, f) with the leftover energy spent on transmission.
  double value(double c, double f) const {
    const double window = link_.max_delay_s - compute_time(c, f);
    const double spare = wd_.energy_budget_j - compute_energy(c, wd_.energy_coeff, f);
    if (!(window > 0.0) || spare < 0.0) return 0.0;
    const double p = std::min(spare / window, wd_.max_power_w);
    const GlobalParams gp{link_.rb_bandwidth_hz, link_.max_delay_s, link_.noise_w};
    const double bits = link_rate(z_, gp, p, link_.gain, link_.interference_w) * window;
    return utility(c, std::min(bits, wd_.app.d_max_bits), wd_.app, kind_);
  }

  bool feasible_band(double c, double& lo, double& hi) const {
    lo = c / link_.max_delay_s;
    hi = std::min(wd_.max_freq_hz, std::sqrt(wd_.energy_budget_j / (c * wd_.energy_coeff)));
    return hi > lo;
  }

  Point best_over_f(double c, int points) const {
    double lo = 0.0;
    double hi = 0.0;
    if (!feasible_band(c, lo, hi)) return {0.0, c, 0.0};
    auto fn = [&](double f) { return f > lo ? value(c, f) : 0.0; };
    const Maximum m = grid_golden_maximize(fn, lo, hi, points, 1e-10);
    return {m.value, c, m.x};
  }

  const WirelessDevice& wd_;
  const LinkBudget& link_;
  int z_;
  UtilityKind kind_;
};

}  // namespace

ScheduleDecision oracle_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                                 UtilityKind kind, const OracleConfig& cfg) {
  if (z <= 0 || !(link.gain > 0.0)) return {};
  const InnerProblem inner(wd, link, z, kind);
  const int nc = std::max(cfg.c_grid_points, 3);
  const double c_top = wd.app.c_max_cycles;
  std::vector<double> cs(nc);
  for (int i = 0; i < nc; ++i) cs[i] = c_top * std::pow(10.0, -6.0 + 6.0 * i / (nc - 1));

  Point best;
  int best_i = -1;
  for (int i = 0; i < nc; ++i) {
    double lo = 0.0;
    double hi = 0.0;
    if (!inner.feasible_band(cs[i], lo, hi)) continue;
    const double step = (hi - lo) / cfg.f_grid_points;
    for (int j = 1; j <= cfg.f_grid_points; ++j) {
      const double f = lo + step * j;
      const double v = inner.value(cs[i], f);
      if (v > best.value) {
        best = {v, cs[i], f};
        best_i = i;
      }
    }
  }
  if (best_i < 0) return {};

  // polish: golden over c between neighbouring grid points, f re-optimized inside
  const double a = cs[std::max(best_i - 1, 0)];
  const double b = cs[std::min(best_i + 1, nc - 1)];
  const Maximum mc = golden_section_maximize(
      [&](double c) { return inner.best_over_f(c, cfg.f_grid_points).value; }, a, b, 1e-10);
  const Point at_c = inner.best_over_f(mc.x, cfg.f_grid_points);
  if (at_c.value > best.value) best = at_c;
  const Point at_grid_c = inner.best_over_f(best.c, cfg.f_grid_points);
  if (at_grid_c.value > best.value) best = at_grid_c;

  ScheduleDecision d;
  d.c_cycles = best.c;
  d.freq_hz = best.f;
  const double window = link.max_delay_s - best.c / best.f;
  const double spare = wd.energy_budget_j - compute_energy(best.c, wd.energy_coeff, best.f);
  const double p_cap = std::min(spare / window, wd.max_power_w);
  const GlobalParams gp{link.rb_bandwidth_hz, link.max_delay_s, link.noise_w};
  const double bits = link_rate(z, gp, p_cap, link.gain, link.interference_w) * window;
  d.data_bits = std::min(bits, wd.app.d_max_bits);
  d.power_w = p_cap;
  if (bits > wd.app.d_max_bits) {
    const double spectral = d.data_bits / (z * link.rb_bandwidth_hz * window);
    d.power_w = std::min(p_cap, std::expm1(spectral * std::log(2.0)) / link.snr_per_watt());
  }
  d.utility = utility(d.c_cycles, d.data_bits, wd.app, kind);
  return d;
}

namespace {

// Best split of k RBs among members by trying every composition.
struct Split {
  double value = 0.0;
  std::vector<int> z;
};

Split best_split(const std::vector<const std::vector<ScheduleDecision>*>& tables, int k) {
  Split best;
  best.z.assign(tables.size(), 0);
  std::vector<int> z(tables.size(), 0);
  std::function<void(std::size_t, int, double)> rec = [&](std::size_t j, int left, double acc) {
    if (j == tables.size()) {
      if (acc > best.value) {
        best.value = acc;
        best.z = z;
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      z[j] = v;
      rec(j + 1, left - v, acc + (*tables[j])[v].utility);
    }
    z[j] = 0;
  };
  rec(0, k, 0.0);
  return best;
}

}  // namespace

OracleResult exact_solve(const Scenario& s, UtilityKind kind, const OracleConfig& cfg) {
  const std::size_t n_bs = s.num_bs();
  const std::size_t n_wd = s.num_wd();
  if (n_bs > static_cast<std::size_t>(cfg.max_bs) || n_wd > static_cast<std::size_t>(cfg.max_wd) ||
      s.max_rb_count() > cfg.max_rb) {
    throw std::invalid_argument("exact_solve: instance exceeds oracle limits");
  }

  // decisions[n][m][z]
  std::vector<std::vector<std::vector<ScheduleDecision>>> decisions(
      n_wd, std::vector<std::vector<ScheduleDecision>>(n_bs));
  for (std::size_t n = 0; n < n_wd; ++n) {
    for (std::size_t m = 0; m < n_bs; ++m) {
      const LinkBudget link = s.link(n, m);
      for (int z = 0; z <= s.base_stations[m].rb_count; ++z) {
        decisions[n][m].push_back(oracle_schedule(s.devices[n], link, z, kind, cfg));
      }
    }
  }

  std::map<std::pair<std::size_t, unsigned>, Split> memo;
  auto split_for = [&](std::size_t m, unsigned mask) -> const Split& {
    auto it = memo.find({m, mask});
    if (it != memo.end()) return it->second;
    std::vector<const std::vector<ScheduleDecision>*> tbl;
    for (std::size_t n = 0; n < n_wd; ++n) {
      if (mask & (1u << n)) tbl.push_back(&decisions[n][m]);
    }
    return memo.emplace(std::pair{m, mask}, best_split(tbl, s.base_stations[m].rb_count))
        .first->second;
  };

  OracleResult result;
  result.assignment = Assignment::empty(n_wd);
  std::vector<std::size_t> choice(n_wd, 0);  // 0 = unassociated, m+1 = BS m
  double best_value = -1.0;
  std::vector<std::size_t> best_choice(n_wd, 0);
  while (true) {
    ++result.associations_checked;
    double total = 0.0;
    for (std::size_t m = 0; m < n_bs; ++m) {
      unsigned mask = 0;
      for (std::size_t n = 0; n < n_wd; ++n) {
        if (choice[n] == m + 1) mask |= 1u << n;
      }
      if (mask) total += split_for(m, mask).value;
    }
    if (total > best_value) {
      best_value = total;
      best_choice = choice;
    }
    std::size_t i = 0;
    while (i < n_wd && ++choice[i] > n_bs) choice[i++] = 0;
    if (i == n_wd) break;
  }

  Assignment& a = result.assignment;
  for (std::size_t m = 0; m < n_bs; ++m) {
    unsigned mask = 0;
    for (std::size_t n = 0; n < n_wd; ++n) {
      if (best_choice[n] == m + 1) mask |= 1u << n;
    }
    if (!mask) continue;
    const Split& sp = split_for(m, mask);
    std::size_t j = 0;
    for (std::size_t n = 0; n < n_wd; ++n) {
      if (!(mask & (1u << n))) continue;
      a.association[n] = m;
      a.rb_counts[n] = sp.z[j];
      a.schedules[n] = decisions[n][m][sp.z[j]];
      ++j;
    }
  }
  for (std::size_t n = 0; n < n_wd; ++n) {
    // a device that gains nothing is left unattached
    if (a.association[n] && a.schedules[n].utility == 0.0 && a.rb_counts[n] == 0) {
      a.association[n] = std::nullopt;
    }
    a.total_utility += a.schedules[n].utility;
  }
  result.optimum = a.total_utility;
  return result;
}

double exact_delta(std::size_t pos, const AllocationResult& alloc,
                   std::span<const UtilityTable> tables, int k) {
  const double own = tables[pos].at(alloc.rb_counts.at(pos));
  std::vector<UtilityTable> others;
  double before = 0.0;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (j == pos) continue;
    others.push_back(tables[j]);
    before += tables[j].at(alloc.rb_counts[j]);
  }
  const double after = others.empty() ? 0.0 : dp_alloc(others, k).total_utility;
  return own - (after - before);
}

}  // namespace semalloc
