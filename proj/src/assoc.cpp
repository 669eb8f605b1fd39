#include "semalloc/assoc.hpp"

#include <algorithm>
#include <stdexcept>

#include "semalloc/baselines.hpp"

namespace semalloc {

std::string to_string(Allocator a) {
  switch (a) {
    case Allocator::Greedy: return "greedy";
    case Allocator::DynamicProgramming: return "dp";
    case Allocator::Even: return "even";
  }
  return "unknown";
}

Allocator allocator_from_string(const std::string& s) {
  if (s == "greedy") return Allocator::Greedy;
  if (s == "dp") return Allocator::DynamicProgramming;
  if (s == "even") return Allocator::Even;
  throw std::invalid_argument("unknown allocator '" + s + "' (expected greedy|dp|even)");
}

Allocator default_allocator(UtilityKind kind) {
  return kind == UtilityKind::ConcaveAccuracy ? Allocator::Greedy : Allocator::DynamicProgramming;
}

AllocationResult allocate(Allocator allocator, std::span<const UtilityTable> tables, int k) {
  switch (allocator) {
    case Allocator::Greedy: return greedy_alloc(tables, k);
    case Allocator::DynamicProgramming: return dp_alloc(tables, k);
    case Allocator::Even: return arb_alloc(tables, k);
  }
  throw std::invalid_argument("unknown allocator");
}

double estimate_delta(std::size_t pos, const AllocationResult& alloc,
                      std::span<const UtilityTable> tables) {
  const int z = alloc.rb_counts.at(pos);
  const double own = tables[pos].at(z);
  if (z == 0) return own;
  std::optional<std::size_t> ref;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (j == pos) continue;
    if (!ref || alloc.rb_counts[j] > alloc.rb_counts[*ref]) ref = j;
  }
  double delta = 0.0;
  if (ref && alloc.rb_counts[*ref] < tables[*ref].k_max()) {
    delta = marginal_gain(tables[*ref], alloc.rb_counts[*ref]);
  }
  return std::max(0.0, own - delta * z);
}

double kurtosis(std::span<const double> deltas) {
  double sum = 0.0;
  double best = 0.0;
  for (double d : deltas) {
    sum += d;
    best = std::max(best, d);
  }
  if (!(sum > 0.0)) return deltas.empty() ? 0.0 : 1.0 / static_cast<double>(deltas.size());
  return best / sum;
}

namespace {

std::vector<UtilityTable> member_tables(const TableSet& tables, std::size_t bs,
                                        std::span<const std::size_t> members) {
  std::vector<UtilityTable> out;
  out.reserve(members.size());
  for (std::size_t n : members) out.push_back(UtilityTable::from_values(tables.at(n, bs).values));
  return out;
}

}  // namespace

AssociationOutcome associate_tables(const TableSet& tables, std::span<const int> rb_budgets,
                                    Allocator allocator) {
  const std::size_t n_wd = tables.num_wd();
  const std::size_t n_bs = tables.num_bs();
  AssociationOutcome out;
  out.association.assign(n_wd, 0);
  std::vector<bool> pending(n_wd, true);
  std::vector<std::optional<std::size_t>> pinned(n_wd);

  std::vector<std::vector<std::size_t>> members(n_bs);
  std::vector<std::vector<UtilityTable>> member_tbl(n_bs);
  std::vector<AllocationResult> alloc(n_bs);
  std::vector<double> deltas(n_bs);

  for (std::size_t step = 0; step < n_wd; ++step) {
    double total = 0.0;
    for (std::size_t m = 0; m < n_bs; ++m) {
      members[m].clear();
      for (std::size_t n = 0; n < n_wd; ++n) {
        if (pending[n] || pinned[n] == m) members[m].push_back(n);
      }
      member_tbl[m] = member_tables(tables, m, members[m]);
      alloc[m] = allocate(allocator, member_tbl[m], rb_budgets[m]);
      total += alloc[m].total_utility;
    }
    if (step == 0) out.upper_bound = total;
    out.step_totals.push_back(total);

    std::optional<std::size_t> pick_wd;
    std::size_t pick_bs = 0;
    double pick_kappa = -1.0;
    for (std::size_t n = 0; n < n_wd; ++n) {
      if (!pending[n]) continue;
      for (std::size_t m = 0; m < n_bs; ++m) {
        const auto it = std::lower_bound(members[m].begin(), members[m].end(), n);
        const auto pos = static_cast<std::size_t>(it - members[m].begin());
        deltas[m] = estimate_delta(pos, alloc[m], member_tbl[m]);
      }
      const double kappa = kurtosis(deltas);
      if (kappa > pick_kappa) {
        pick_kappa = kappa;
        pick_wd = n;
        pick_bs = static_cast<std::size_t>(std::max_element(deltas.begin(), deltas.end()) -
                                           deltas.begin());
      }
    }
    pending[*pick_wd] = false;
    pinned[*pick_wd] = pick_bs;
    out.association[*pick_wd] = pick_bs;
    out.order.push_back(*pick_wd);
  }
  return out;
}

std::vector<int> rb_budgets(const Scenario& s) {
  std::vector<int> k;
  k.reserve(s.num_bs());
  for (const auto& bs : s.base_stations) k.push_back(bs.rb_count);
  return k;
}

Assignment assemble_assignment(const Scenario& s, const TableSet& tables,
                               std::span<const std::optional<std::size_t>> association,
                               Allocator allocator) {
  Assignment a = Assignment::empty(s.num_wd());
  a.association.assign(association.begin(), association.end());
  for (std::size_t m = 0; m < s.num_bs(); ++m) {
    std::vector<std::size_t> members;
    for (std::size_t n = 0; n < s.num_wd(); ++n) {
      if (association[n] == m) members.push_back(n);
    }
    if (members.empty()) continue;
    const auto tbl = member_tables(tables, m, members);
    const AllocationResult r = allocate(allocator, tbl, s.base_stations[m].rb_count);
    for (std::size_t j = 0; j < members.size(); ++j) {
      const std::size_t n = members[j];
      const int z = r.rb_counts[j];
      a.rb_counts[n] = z;
      a.schedules[n] = tables.at(n, m).decisions.at(static_cast<std::size_t>(z));
    }
  }
  for (const auto& d : a.schedules) a.total_utility += d.utility;
  return a;
}

Assignment associate(const Scenario& s, UtilityKind kind, std::optional<Allocator> allocator,
                     unsigned threads) {
  TableCache cache(s, kind, FixedCompute::HalfMaxModel, threads);
  return associate(cache, allocator);
}

Assignment associate(TableCache& cache, std::optional<Allocator> allocator) {
  const Scenario& s = cache.scenario();
  const Allocator alloc = allocator.value_or(default_allocator(cache.kind()));
  const TableSet& tables = cache.get(SchedulingScheme::Adaptive);
  const auto budgets = rb_budgets(s);
  const AssociationOutcome outcome = associate_tables(tables, budgets, alloc);
  std::vector<std::optional<std::size_t>> assoc(outcome.association.begin(),
                                                outcome.association.end());
  Assignment a = assemble_assignment(s, tables, assoc, alloc);
  a.upper_bound = outcome.upper_bound;
  return a;
}

}  // namespace semalloc
