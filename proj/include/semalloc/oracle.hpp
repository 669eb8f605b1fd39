#pragma once

#include <cstddef>
#include <span>

#include "semalloc/netmodel.hpp"
#include "semalloc/rballoc.hpp"
#include "semalloc/table.hpp"
#include "semalloc/utilmodel.hpp"

// Exhaustive solver for toy instances. Shares only the physical model and
// utility fits with the main pipeline: the per-device problem is solved on its
// own (c, f) grid, and allocations are enumerated rather than optimized.
namespace semalloc {

struct OracleConfig {
  int c_grid_points = 64;  // log-spaced on (0, C^a]
  int f_grid_points = 64;  // uniform over each feasible frequency interval
  int max_bs = 3;
  int max_wd = 4;
  int max_rb = 6;
};

struct OracleResult {
  Assignment assignment;
  double optimum = 0.0;
  std::size_t associations_checked = 0;
};

// Grid search with golden-section polish for one device holding z RBs.
ScheduleDecision oracle_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                                 UtilityKind kind, const OracleConfig& cfg = {});

// Throws std::invalid_argument when the instance exceeds the configured limits.
OracleResult exact_solve(const Scenario& s, UtilityKind kind, const OracleConfig& cfg = {});

// Utility lost at a base station if member `pos` leaves and the others
// re-split the RBs optimally.
double exact_delta(std::size_t pos, const AllocationResult& alloc,
                   std::span<const UtilityTable> tables, int k);

}  // namespace semalloc
