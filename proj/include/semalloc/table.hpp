#pragma once

#include <vector>

#include "semalloc/netmodel.hpp"

namespace semalloc {

// u*(z) for z = 0..k_max for one (device, base station) pair, with the
// schedule achieving each entry when the producer records it.
struct UtilityTable {
  std::vector<double> values;
  std::vector<ScheduleDecision> decisions;  // empty or values.size() long

  int k_max() const { return static_cast<int>(values.size()) - 1; }
  double at(int z) const { return values.at(static_cast<std::size_t>(z)); }

  static UtilityTable from_values(std::vector<double> v) {
    UtilityTable t;
    t.values = std::move(v);
    return t;
  }
};

}  // namespace semalloc
