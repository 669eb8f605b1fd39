#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalloc/netmodel.hpp"
#include "semalloc/rballoc.hpp"
#include "semalloc/tables.hpp"

// Comparison schemes. Each swaps exactly one stage of the proposed pipeline
// (FAN swaps all three).
namespace semalloc {

enum class BaselineKind { TC, FSC, ARB, NUA, FAN };

std::string to_string(BaselineKind kind);

// Raw-data upload with no on-device processing. Succeeds when D_raw fits in
// the deadline and energy budget over z RBs; the BS then runs the largest
// model, so the utility is that of accuracy eta2.
ScheduleDecision tc_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                             UtilityKind kind);

// Fixed workload (c, d) = (D^a/2 or C^a/2, D^a/2); utility u(c, d) when
// feasible, else 0.
ScheduleDecision fsc_schedule(const WirelessDevice& wd, const LinkBudget& link, int z,
                              UtilityKind kind, FixedCompute fixed = FixedCompute::HalfMaxModel);

// floor(k / n) each, remainder one apiece to the lowest indices.
AllocationResult arb_alloc(std::span<const UtilityTable> tables, int k);

// Nearest base station per device, lowest index on ties.
std::vector<std::optional<std::size_t>> nua_assoc(const Scenario& s);

struct BaselineOptions {
  FixedCompute fixed_compute = FixedCompute::HalfMaxModel;
  unsigned threads = 0;
};

Assignment run_baseline(BaselineKind kind, const Scenario& s, UtilityKind utility_kind,
                        const BaselineOptions& opts = {});
// Same, drawing tables from a shared cache.
Assignment run_baseline(BaselineKind kind, TableCache& cache);

}  // namespace semalloc
