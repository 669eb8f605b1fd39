#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalloc/netmodel.hpp"
#include "semalloc/rballoc.hpp"
#include "semalloc/tables.hpp"

// User association. Every device starts attached to every base station; one
// device per step is pinned to a single station, picking the device whose
// estimated losses are most lopsided (largest kurtosis) and sending it where
// detaching would hurt most.
namespace semalloc {

enum class Allocator { Greedy, DynamicProgramming, Even };

std::string to_string(Allocator a);
Allocator allocator_from_string(const std::string& s);
// Greedy for the concave kind, dynamic programming otherwise.
Allocator default_allocator(UtilityKind kind);

AllocationResult allocate(Allocator allocator, std::span<const UtilityTable> tables, int k);

// Approximate utility lost at a base station if member `pos` leaves it:
// u*_n(z_n) - delta * z_n, where delta is the marginal gain of the other
// member holding the most RBs (lowest index on ties). Clamped at 0.
double estimate_delta(std::size_t pos, const AllocationResult& alloc,
                      std::span<const UtilityTable> tables);

// max / sum of the per-BS losses; 1/M when every loss is zero.
double kurtosis(std::span<const double> deltas);

struct AssociationOutcome {
  std::vector<std::size_t> association;  // device -> base station
  double upper_bound = 0.0;              // total with everyone attached everywhere
  std::vector<double> step_totals;       // allocation total at the start of each step
  std::vector<std::size_t> order;        // devices in the order they were pinned
};

AssociationOutcome associate_tables(const TableSet& tables, std::span<const int> rb_budgets,
                                    Allocator allocator);

// Allocates RBs on each base station for the given association and fills in
// the schedules recorded in the tables.
Assignment assemble_assignment(const Scenario& s, const TableSet& tables,
                               std::span<const std::optional<std::size_t>> association,
                               Allocator allocator);

std::vector<int> rb_budgets(const Scenario& s);

// The full three-stage pipeline with adaptive scheduling.
Assignment associate(const Scenario& s, UtilityKind kind,
                     std::optional<Allocator> allocator = std::nullopt, unsigned threads = 0);
Assignment associate(TableCache& cache, std::optional<Allocator> allocator = std::nullopt);

}  // namespace semalloc
