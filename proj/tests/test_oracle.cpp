#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "semalloc/assoc.hpp"
#include "semalloc/oracle.hpp"
#include "semalloc/scenario.hpp"
#include "semalloc/wdsched.hpp"
#include "support.hpp"

using namespace semalloc;

namespace {

Scenario tiny(std::uint64_t seed, int m = 2, int n = 3) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.num_bs = m;
  cfg.num_wd = n;
  cfg.rb_choices = {2, 3, 4};
  return generate(cfg);
}

}  // namespace

TEST(OracleSchedule, AgreesWithScheduler) {
  testsupport::Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    WirelessDevice wd;
    LinkBudget link;
    testsupport::random_pair(rng, wd, link, 80.0, 115.0);
    const int z = rng.integer(1, 6);
    for (UtilityKind kind : {UtilityKind::ConcaveAccuracy, UtilityKind::GeneralReciprocal}) {
      const double a = oracle_schedule(wd, link, z, kind).utility;
      const double b = WdScheduler(wd, link, kind).optimal_schedule(z).utility;
      EXPECT_LE(testsupport::rel_diff(a, b), 1e-4) << "pair " << t;
    }
  }
}

TEST(ExactSolve, SingleDeviceSingleCell) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario s = tiny(seed, 1, 1);
    const auto r = exact_solve(s, UtilityKind::ConcaveAccuracy);
    const int k = s.base_stations[0].rb_count;
    const double ref =
        WdScheduler(s.devices[0], s.link(0, 0), UtilityKind::ConcaveAccuracy).optimal_schedule(k).utility;
    EXPECT_LE(testsupport::rel_diff(r.optimum, ref), 1e-4);
    EXPECT_TRUE(validate_assignment(r.assignment, s).empty());
  }
}

TEST(ExactSolve, DeadChannelLeavesDeviceUnassociated) {
  Scenario s = tiny(3, 2, 2);
  s.gain[0][1] = 0.0;
  s.gain[1][1] = 0.0;
  const auto r = exact_solve(s, UtilityKind::ConcaveAccuracy);
  EXPECT_FALSE(r.assignment.association[1].has_value());
  EXPECT_EQ(r.assignment.rb_counts[1], 0);
  EXPECT_TRUE(validate_assignment(r.assignment, s).empty());
}

TEST(ExactSolve, AtLeastTheProposedPipeline) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = tiny(seed);
    for (UtilityKind kind : {UtilityKind::ConcaveAccuracy, UtilityKind::GeneralReciprocal}) {
      const double opt = exact_solve(s, kind).optimum;
      const double prop = associate(s, kind, std::nullopt, 1).total_utility;
      EXPECT_GE(opt, prop * (1 - 1e-3)) << "seed " << seed;
    }
  }
}

TEST(ExactSolve, ChecksEveryAssociation) {
  const Scenario s = tiny(5, 2, 3);
  // each device may also stay unattached: 3^3
  EXPECT_EQ(exact_solve(s, UtilityKind::ConcaveAccuracy).associations_checked, 27u);
}

TEST(ExactSolve, InvariantUnderDevicePermutation) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = tiny(seed);
    std::vector<std::size_t> perm(s.num_wd());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    Scenario p = s;
    for (std::size_t n = 0; n < s.num_wd(); ++n) {
      p.devices[n] = s.devices[perm[n]];
      for (std::size_t m = 0; m < s.num_bs(); ++m) p.gain[m][n] = s.gain[m][perm[n]];
    }
    const double a = exact_solve(s, UtilityKind::ConcaveAccuracy).optimum;
    const double b = exact_solve(p, UtilityKind::ConcaveAccuracy).optimum;
    EXPECT_LE(testsupport::rel_diff(a, b), 1e-12);
  }
}

TEST(ExactSolve, RejectsLargeInstances) {
  EXPECT_THROW(exact_solve(tiny(1, 4, 2), UtilityKind::ConcaveAccuracy), std::invalid_argument);
  EXPECT_THROW(exact_solve(tiny(1, 2, 5), UtilityKind::ConcaveAccuracy), std::invalid_argument);
  GenConfig cfg;
  cfg.num_bs = 1;
  cfg.num_wd = 1;
  cfg.rb_choices = {7};
  EXPECT_THROW(exact_solve(generate(cfg), UtilityKind::ConcaveAccuracy), std::invalid_argument);
}

TEST(ExactDelta, Examples) {
  std::vector<UtilityTable> t{UtilityTable::from_values({0, 4, 6, 7}),
                              UtilityTable::from_values({0, 3, 5, 6})};
  // optimum (2, 1) = 9; without member 0 the other takes all 3: 6
  const auto alloc = dp_alloc(t, 3);
  EXPECT_DOUBLE_EQ(alloc.total_utility, 9.0);
  EXPECT_DOUBLE_EQ(exact_delta(0, alloc, t, 3), 3.0);
  EXPECT_DOUBLE_EQ(exact_delta(1, alloc, t, 3), 2.0);
  const std::vector<UtilityTable> one{UtilityTable::from_values({0, 2, 3})};
  EXPECT_DOUBLE_EQ(exact_delta(0, dp_alloc(one, 2), one, 2), 3.0);
}
