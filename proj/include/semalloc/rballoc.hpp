#pragma once

#include <span>
#include <vector>

#include "semalloc/table.hpp"

// Resource-block allocation inside one base station, given the utility table
// of every member device.
namespace semalloc {

struct AllocationResult {
  std::vector<int> rb_counts;
  double total_utility = 0.0;
};

// value[k][j] is the best utility using the first j+1 members and k RBs;
// choice[k][j] is the RB count given to member j in that optimum.
struct DpTables {
  std::vector<std::vector<double>> value;
  std::vector<std::vector<int>> choice;
};

// Sum of tables[j].at(z[j]) in member order.
double total_of(std::span<const UtilityTable> tables, std::span<const int> rb_counts);

// Hands out the k RBs one at a time to the member with the largest marginal
// gain (lowest index on ties). Optimal when every table is concave.
AllocationResult greedy_alloc(std::span<const UtilityTable> tables, int k);

// Exact optimum for arbitrary non-decreasing tables in O(|members| * k^2).
AllocationResult dp_alloc(std::span<const UtilityTable> tables, int k);
DpTables dp_tables(std::span<const UtilityTable> tables, int k);

// u*(z+1) - u*(z). Throws std::out_of_range when z+1 is past the table.
double marginal_gain(const UtilityTable& table, int z);

}  // namespace semalloc
