#include "semalloc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "semalloc/assoc.hpp"
#include "semalloc/wdsched.hpp"

namespace semalloc {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::TC: return "TC";
    case BaselineKind::FSC: return "FSC";
    case BaselineKind::ARB: return "ARB";
    case BaselineKind::NUA: return "NUA";
    case BaselineKind::FAN: return "FAN";
  }
  return "unknown";
}

namespace {

// Smallest power that pushes `bits` through z RBs within `window` seconds.
double power_for(double bits, int z, double window, const LinkBudget& link) {
  const double spectral = bits / (z * link.rb_bandwidth_hz * window);
  return std::expm1(spectral * std::log(2.0)) / link.snr_per_watt();
}

}  // namespace

ScheduleDecision tc_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                             UtilityKind kind) {
  if (z <= 0 || !(link.gain > 0.0)) return {};
  const WdScheduler sched(wd, link, kind);
  const double capacity = sched.d_given_f(0.0, 0.0, z);
  const double raw = wd.app.raw_data_bits;
  if (capacity < raw) return {};
  ScheduleDecision d;
  d.data_bits = raw;
  d.power_w = std::min(power_for(raw, z, link.max_delay_s, link), *sched.transmit_power(0.0, 0.0));
  d.utility = utility_of_accuracy(wd.app.eta2, kind);
  return d;
}

ScheduleDecision fsc_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                              UtilityKind kind, FixedCompute fixed) {
  if (z <= 0 || !(link.gain > 0.0)) return {};
  const double c =
      fixed == FixedCompute::HalfDataSize ? wd.app.d_max_bits / 2.0 : wd.app.c_max_cycles / 2.0;
  const double bits = wd.app.d_max_bits / 2.0;
  const WdScheduler sched(wd, link, kind);
  const auto cap = sched.g_of_c(c);
  if (!cap || z * cap->bits_per_rb < bits) return {};
  ScheduleDecision d;
  d.c_cycles = c;
  d.freq_hz = cap->freq_hz;
  d.data_bits = bits;
  const double window = link.max_delay_s - c / cap->freq_hz;
  d.power_w = std::min(power_for(bits, z, window, link), *sched.transmit_power(c, cap->freq_hz));
  d.utility = utility(c, bits, wd.app, kind);
  return d;
}

AllocationResult arb_alloc(std::span<const UtilityTable> tables, int k) {
  AllocationResult out;
  const int n = static_cast<int>(tables.size());
  out.rb_counts.assign(tables.size(), 0);
  if (n == 0) return out;
  for (int j = 0; j < n; ++j) out.rb_counts[j] = k / n + (j < k % n ? 1 : 0);
  out.total_utility = total_of(tables, out.rb_counts);
  return out;
}

std::vector<std::optional<std::size_t>> nua_assoc(const Scenario& s) {
  std::vector<std::optional<std::size_t>> out(s.num_wd());
  for (std::size_t n = 0; n < s.num_wd(); ++n) {
    std::size_t best = 0;
    double best_dist = distance_m(s.devices[n].position, s.base_stations[0].position);
    for (std::size_t m = 1; m < s.num_bs(); ++m) {
      const double d = distance_m(s.devices[n].position, s.base_stations[m].position);
      if (d < best_dist) {
        best_dist = d;
        best = m;
      }
    }
    out[n] = best;
  }
  return out;
}

namespace {

std::vector<std::optional<std::size_t>> proposed_association(const Scenario& s,
                                                             const TableSet& tables,
                                                             Allocator allocator) {
  const auto budgets = rb_budgets(s);
  const auto outcome = associate_tables(tables, budgets, allocator);
  return {outcome.association.begin(), outcome.association.end()};
}

}  // namespace

Assignment run_baseline(BaselineKind kind, const Scenario& s, UtilityKind utility_kind,
                        const BaselineOptions& opts) {
  TableCache cache(s, utility_kind, opts.fixed_compute, opts.threads);
  return run_baseline(kind, cache);
}

Assignment run_baseline(BaselineKind kind, TableCache& cache) {
  const Scenario& s = cache.scenario();
  switch (kind) {
    case BaselineKind::TC:
    case BaselineKind::FSC: {
      // Fixed schemes give step-shaped tables, so allocation uses the exact DP.
      const TableSet& tables = cache.get(kind == BaselineKind::TC
                                             ? SchedulingScheme::Traditional
                                             : SchedulingScheme::FixedSemantic);
      const auto assoc = proposed_association(s, tables, Allocator::DynamicProgramming);
      return assemble_assignment(s, tables, assoc, Allocator::DynamicProgramming);
    }
    case BaselineKind::ARB: {
      const TableSet& tables = cache.get(SchedulingScheme::Adaptive);
      const auto assoc = proposed_association(s, tables, Allocator::Even);
      return assemble_assignment(s, tables, assoc, Allocator::Even);
    }
    case BaselineKind::NUA: {
      const TableSet& tables = cache.get(SchedulingScheme::Adaptive);
      return assemble_assignment(s, tables, nua_assoc(s), default_allocator(cache.kind()));
    }
    case BaselineKind::FAN: {
      const TableSet& tables = cache.get(SchedulingScheme::FixedSemantic);
      return assemble_assignment(s, tables, nua_assoc(s), Allocator::Even);
    }
  }
  return Assignment::empty(s.num_wd());
}

}  // namespace semalloc
