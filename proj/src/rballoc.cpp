#include "semalloc/rballoc.hpp"

#include <stdexcept>

namespace semalloc {

namespace {

void require_coverage(std::span<const UtilityTable> tables, int k) {
  if (k < 0) throw std::invalid_argument("RB budget must be non-negative");
  for (const auto& t : tables) {
    if (t.k_max() < k) throw std::invalid_argument("utility table shorter than the RB budget");
  }
}

}  // namespace

double total_of(std::span<const UtilityTable> tables, std::span<const int> rb_counts) {
  double total = 0.0;
  for (std::size_t j = 0; j < tables.size(); ++j) total += tables[j].at(rb_counts[j]);
  return total;
}

double marginal_gain(const UtilityTable& table, int z) {
  if (z < 0 || z + 1 > table.k_max()) {
    throw std::out_of_range("marginal_gain: z + 1 outside the utility table");
  }
  return table.at(z + 1) - table.at(z);
}

AllocationResult greedy_alloc(std::span<const UtilityTable> tables, int k) {
  require_coverage(tables, k);
  AllocationResult out;
  out.rb_counts.assign(tables.size(), 0);
  if (tables.empty()) return out;

  std::vector<double> gain(tables.size());
  for (std::size_t j = 0; j < tables.size(); ++j) gain[j] = k > 0 ? marginal_gain(tables[j], 0) : 0.0;
  for (int i = 0; i < k; ++i) {
    std::size_t pick = 0;
    for (std::size_t j = 1; j < tables.size(); ++j) {
      if (gain[j] > gain[pick]) pick = j;
    }
    const int z = ++out.rb_counts[pick];
    // only the member that just grew needs a fresh marginal
    gain[pick] = z < tables[pick].k_max() ? marginal_gain(tables[pick], z) : -1.0;
  }
  out.total_utility = total_of(tables, out.rb_counts);
  return out;
}

DpTables dp_tables(std::span<const UtilityTable> tables, int k) {
  require_coverage(tables, k);
  const std::size_t members = tables.size();
  DpTables dp;
  dp.value.assign(k + 1, std::vector<double>(members, 0.0));
  dp.choice.assign(k + 1, std::vector<int>(members, 0));
  if (members == 0) return dp;
  for (int kk = 0; kk <= k; ++kk) {
    dp.value[kk][0] = tables[0].at(kk);
    dp.choice[kk][0] = kk;
  }
  for (std::size_t j = 1; j < members; ++j) {
    for (int kk = 0; kk <= k; ++kk) {
      double best = dp.value[kk][j - 1] + tables[j].at(0);
      int best_z = 0;
      for (int z = 1; z <= kk; ++z) {
        const double v = dp.value[kk - z][j - 1] + tables[j].at(z);
        if (v > best) {
          best = v;
          best_z = z;
        }
      }
      dp.value[kk][j] = best;
      dp.choice[kk][j] = best_z;
    }
  }
  return dp;
}

AllocationResult dp_alloc(std::span<const UtilityTable> tables, int k) {
  const DpTables dp = dp_tables(tables, k);
  AllocationResult out;
  out.rb_counts.assign(tables.size(), 0);
  if (tables.empty()) return out;
  int left = k;
  for (std::size_t j = tables.size(); j-- > 0;) {
    out.rb_counts[j] = dp.choice[left][j];
    left -= out.rb_counts[j];
  }
  out.total_utility = total_of(tables, out.rb_counts);
  return out;
}

}  // namespace semalloc
