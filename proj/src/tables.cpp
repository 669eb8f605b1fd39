#include "semalloc/tables.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "semalloc/baselines.hpp"
#include "semalloc/wdsched.hpp"

namespace semalloc {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

UtilityTable build_table(const Scenario& s, std::size_t wd, std::size_t bs, int k_max,
                         const SchedulingConfig& cfg) {
  const auto& dev = s.devices.at(wd);
  const LinkBudget link = s.link(wd, bs);
  if (cfg.scheme == SchedulingScheme::Adaptive) {
    return WdScheduler(dev, link, cfg.kind).utility_table(k_max);
  }
  UtilityTable t;
  t.values.reserve(k_max + 1);
  t.decisions.reserve(k_max + 1);
  for (int z = 0; z <= k_max; ++z) {
    const ScheduleDecision d = cfg.scheme == SchedulingScheme::Traditional
                                   ? tc_schedule(dev, link, z, cfg.kind)
                                   : fsc_schedule(dev, link, z, cfg.kind, cfg.fixed_compute);
    t.values.push_back(d.utility);
    t.decisions.push_back(d);
  }
  return t;
}

TableSet::TableSet(const Scenario& s, const SchedulingConfig& cfg, unsigned threads)
    : num_wd_(s.num_wd()), num_bs_(s.num_bs()), cfg_(cfg), tables_(num_wd_ * num_bs_) {
  parallel_for(tables_.size(), threads, [&](std::size_t i) {
    const std::size_t n = i / num_bs_;
    const std::size_t m = i % num_bs_;
    tables_[i] = build_table(s, n, m, s.base_stations[m].rb_count, cfg_);
  });
}

TableCache::TableCache(const Scenario& s, UtilityKind kind, FixedCompute fixed_compute,
                       unsigned threads)
    : scenario_(&s), kind_(kind), fixed_compute_(fixed_compute), threads_(threads) {}

const TableSet& TableCache::get(SchedulingScheme scheme) {
  auto& slot = sets_[static_cast<int>(scheme)];
  if (!slot) slot.emplace(*scenario_, SchedulingConfig{scheme, kind_, fixed_compute_}, threads_);
  return *slot;
}

}  // namespace semalloc
