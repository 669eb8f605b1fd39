#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "semalloc/netmodel.hpp"
#include "semalloc/table.hpp"
#include "semalloc/utilmodel.hpp"

namespace semalloc {

// How each device turns RBs into utility.
enum class SchedulingScheme {
  Adaptive,       // optimal (c, f, P, d)
  Traditional,    // raw data, no on-device computation
  FixedSemantic,  // fixed (c, d)
};

// Fixed-semantic workload choice: half the largest model, c = C^a / 2 (the
// default), or c = D^a / 2 taken literally as a cycle count.
enum class FixedCompute { HalfDataSize, HalfMaxModel };

struct SchedulingConfig {
  SchedulingScheme scheme = SchedulingScheme::Adaptive;
  UtilityKind kind = UtilityKind::ConcaveAccuracy;
  FixedCompute fixed_compute = FixedCompute::HalfMaxModel;
};

// Table for one (device, base station) pair covering z = 0..k_max.
UtilityTable build_table(const Scenario& s, std::size_t wd, std::size_t bs, int k_max,
                         const SchedulingConfig& cfg);

// Memoized utility tables for every (device, base station) pair, each
// covering that station's RB budget. Construction fills all pairs, spread
// over `threads` workers (0 = hardware concurrency); every slot is written by
// exactly one worker.
class TableSet {
 public:
  TableSet(const Scenario& s, const SchedulingConfig& cfg, unsigned threads = 0);

  const UtilityTable& at(std::size_t wd, std::size_t bs) const {
    return tables_[wd * num_bs_ + bs];
  }
  std::size_t num_wd() const { return num_wd_; }
  std::size_t num_bs() const { return num_bs_; }
  const SchedulingConfig& config() const { return cfg_; }

 private:
  std::size_t num_wd_;
  std::size_t num_bs_;
  SchedulingConfig cfg_;
  std::vector<UtilityTable> tables_;
};

// Lazily built TableSets for one scenario and utility kind, one per
// scheduling scheme, so several algorithms can share them.
class TableCache {
 public:
  TableCache(const Scenario& s, UtilityKind kind,
             FixedCompute fixed_compute = FixedCompute::HalfMaxModel, unsigned threads = 0);

  const TableSet& get(SchedulingScheme scheme);
  const Scenario& scenario() const { return *scenario_; }
  UtilityKind kind() const { return kind_; }

 private:
  const Scenario* scenario_;
  UtilityKind kind_;
  FixedCompute fixed_compute_;
  unsigned threads_;
  std::optional<TableSet> sets_[3];
};

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace semalloc
