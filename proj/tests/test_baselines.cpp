#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "semalloc/assoc.hpp"
#include "semalloc/baselines.hpp"
#include "semalloc/scenario.hpp"
#include "semalloc/wdsched.hpp"
#include "support.hpp"

using namespace semalloc;

namespace {

Scenario default_layout(std::uint64_t seed, int n = 30) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.num_wd = n;
  return generate(cfg);
}

// Raw-upload capacity at c = 0: whole window, power E/T capped at P_max.
double raw_capacity(const WirelessDevice& wd, const LinkBudget& link, int z) {
  const double p = std::min(wd.energy_budget_j / link.max_delay_s, wd.max_power_w);
  const double snr = link.gain * p / (link.noise_w + link.interference_w);
  return z * link.rb_bandwidth_hz * link.max_delay_s * std::log2(1.0 + snr);
}

}  // namespace

TEST(TcSchedule, NoRbsNoUtility) {
  const auto wd = testsupport::reference_device();
  EXPECT_EQ(tc_schedule(wd, testsupport::reference_link(), 0, UtilityKind::ConcaveAccuracy),
            ScheduleDecision{});
}

TEST(TcSchedule, StrongLinkManyRbsSucceedsFewFail) {
  auto wd = testsupport::reference_device();
  wd.app.raw_data_bits = 0.6e6;
  const auto link = testsupport::reference_link(std::pow(10.0, -9.0));
  ASSERT_GE(raw_capacity(wd, link, 100), wd.app.raw_data_bits);
  ASSERT_LT(raw_capacity(wd, link, 5), wd.app.raw_data_bits);
  const auto ok = tc_schedule(wd, link, 100, UtilityKind::ConcaveAccuracy);
  EXPECT_DOUBLE_EQ(ok.utility, wd.app.eta2);
  EXPECT_EQ(ok.c_cycles, 0.0);
  EXPECT_EQ(ok.data_bits, wd.app.raw_data_bits);
  EXPECT_EQ(tc_schedule(wd, link, 5, UtilityKind::ConcaveAccuracy).utility, 0.0);
  EXPECT_DOUBLE_EQ(tc_schedule(wd, link, 100, UtilityKind::GeneralReciprocal).utility,
                   1.0 / (1.0 - wd.app.eta2));
}

TEST(TcSchedule, ExactCapacityCountsAsSuccess) {
  auto wd = testsupport::reference_device();
  const auto link = testsupport::reference_link();
  const WdScheduler sched(wd, link, UtilityKind::ConcaveAccuracy);
  wd.app.raw_data_bits = sched.d_given_f(0.0, 0.0, 7);
  EXPECT_GT(tc_schedule(wd, link, 7, UtilityKind::ConcaveAccuracy).utility, 0.0);
  wd.app.raw_data_bits = std::nextafter(wd.app.raw_data_bits, 1e300) * (1 + 1e-12);
  EXPECT_EQ(tc_schedule(wd, link, 7, UtilityKind::ConcaveAccuracy).utility, 0.0);
}

TEST(TcSchedule, TwoValuedAndMatchesCapacity) {
  testsupport::Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    WirelessDevice wd;
    LinkBudget link;
    testsupport::random_pair(rng, wd, link, 70.0, 110.0);
    const int z = rng.integer(1, 100);
    for (UtilityKind kind : {UtilityKind::ConcaveAccuracy, UtilityKind::GeneralReciprocal}) {
      const auto d = tc_schedule(wd, link, z, kind);
      const double win = utility_of_accuracy(wd.app.eta2, kind);
      EXPECT_TRUE(d.utility == 0.0 || d.utility == win);
      const double cap = raw_capacity(wd, link, z);
      if (testsupport::rel_diff(cap, wd.app.raw_data_bits) > 1e-9) {
        EXPECT_EQ(d.utility > 0.0, cap >= wd.app.raw_data_bits);
      }
      if (d.utility > 0.0) {
        EXPECT_LE(d.power_w, wd.max_power_w * (1 + 1e-12));
        EXPECT_LE(d.power_w * link.max_delay_s, wd.energy_budget_j * (1 + 1e-12));
      }
    }
  }
}

TEST(FscSchedule, NoRbsNoUtility) {
  const auto wd = testsupport::reference_device();
  EXPECT_EQ(fsc_schedule(wd, testsupport::reference_link(), 0, UtilityKind::ConcaveAccuracy),
            ScheduleDecision{});
}

TEST(FscSchedule, FixedUtilityOnceFeasible) {
  testsupport::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    WirelessDevice wd;
    LinkBudget link;
    testsupport::random_pair(rng, wd, link);
    for (FixedCompute fixed : {FixedCompute::HalfMaxModel, FixedCompute::HalfDataSize}) {
      const double c = fixed == FixedCompute::HalfMaxModel ? wd.app.c_max_cycles / 2
                                                           : wd.app.d_max_bits / 2;
      const double expected = utility(c, wd.app.d_max_bits / 2, wd.app, UtilityKind::ConcaveAccuracy);
      bool seen = false;
      for (int z = 1; z <= 100; ++z) {
        const auto d = fsc_schedule(wd, link, z, UtilityKind::ConcaveAccuracy, fixed);
        const bool ok = d.utility > 0.0;
        // infeasible below some threshold, feasible from there on
        EXPECT_FALSE(seen && !ok) << "z " << z;
        seen = seen || ok;
        if (ok) {
          EXPECT_DOUBLE_EQ(d.utility, expected);
          EXPECT_EQ(d.c_cycles, c);
          EXPECT_EQ(d.data_bits, wd.app.d_max_bits / 2);
        }
      }
    }
  }
}

TEST(FscSchedule, FeasibleDecisionsRespectBudgets) {
  testsupport::Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    WirelessDevice wd;
    LinkBudget link;
    testsupport::random_pair(rng, wd, link);
    const int z = rng.integer(1, 100);
    const auto d = fsc_schedule(wd, link, z, UtilityKind::ConcaveAccuracy);
    if (d.utility == 0.0) continue;
    const double t_comp = d.c_cycles / d.freq_hz;
    const double rate = z * link.rb_bandwidth_hz *
                        std::log2(1 + link.gain * d.power_w / (link.noise_w + link.interference_w));
    const double t_tx = d.data_bits / rate;
    EXPECT_LE(t_comp + t_tx, link.max_delay_s * (1 + 1e-9));
    EXPECT_LE(d.c_cycles * wd.energy_coeff * d.freq_hz * d.freq_hz + d.power_w * t_tx,
              wd.energy_budget_j * (1 + 1e-9));
    EXPECT_LE(d.freq_hz, wd.max_freq_hz);
    EXPECT_LE(d.power_w, wd.max_power_w * (1 + 1e-12));
  }
}

TEST(ArbAlloc, Examples) {
  std::vector<UtilityTable> four(4, UtilityTable::from_values(std::vector<double>(9, 0.0)));
  EXPECT_EQ(arb_alloc(four, 8).rb_counts, (std::vector<int>{2, 2, 2, 2}));
  std::vector<UtilityTable> three(3, UtilityTable::from_values(std::vector<double>(9, 0.0)));
  EXPECT_EQ(arb_alloc(three, 8).rb_counts, (std::vector<int>{3, 3, 2}));
  const std::vector<UtilityTable> one{UtilityTable::from_values({0, 1, 2, 3, 4, 5})};
  const auto r = arb_alloc(one, 5);
  EXPECT_EQ(r.rb_counts, std::vector<int>{5});
  EXPECT_EQ(r.total_utility, 5.0);
}

TEST(ArbAlloc, NeverBeatsDp) {
  testsupport::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int k = rng.integer(0, 30);
    std::vector<UtilityTable> tables;
    for (int j = rng.integer(1, 7); j > 0; --j) tables.push_back(testsupport::monotone_table(rng, k));
    const auto even = arb_alloc(tables, k);
    EXPECT_LE(even.total_utility, dp_alloc(tables, k).total_utility);
    EXPECT_EQ(std::accumulate(even.rb_counts.begin(), even.rb_counts.end(), 0), k);
    const auto [lo, hi] = std::minmax_element(even.rb_counts.begin(), even.rb_counts.end());
    EXPECT_LE(*hi - *lo, 1);
  }
}

TEST(NuaAssoc, ColocatedAndTies) {
  Scenario s;
  s.base_stations = {{0, {0, 0}, 5, 0}, {1, {100, 0}, 5, 0}, {2, {400, 0}, 5, 0},
                     {3, {0, 200}, 5, 0}};
  WirelessDevice a = testsupport::reference_device();
  WirelessDevice b = a;
  WirelessDevice c = a;
  a.id = 0;
  a.position = {400, 0};
  b.id = 1;
  b.position = {250, 0};  // equidistant to BS 1 and BS 2
  c.id = 2;
  c.position = {0, 100};  // equidistant to BS 0 and BS 3
  s.devices = {a, b, c};
  s.gain.assign(4, std::vector<double>(3, 1e-10));
  const auto x = nua_assoc(s);
  EXPECT_EQ(x[0], std::optional<std::size_t>(2));
  EXPECT_EQ(x[1], std::optional<std::size_t>(1));
  EXPECT_EQ(x[2], std::optional<std::size_t>(0));
}

TEST(NuaAssoc, MatchesIndependentNearestNeighbour) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = default_layout(seed);
    const auto x = nua_assoc(s);
    for (std::size_t n = 0; n < s.num_wd(); ++n) {
      std::size_t best = 0;
      double best_sq = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < s.num_bs(); ++m) {
        const double dx = s.devices[n].position.x_m - s.base_stations[m].position.x_m;
        const double dy = s.devices[n].position.y_m - s.base_stations[m].position.y_m;
        if (dx * dx + dy * dy < best_sq) {
          best_sq = dx * dx + dy * dy;
          best = m;
        }
      }
      EXPECT_EQ(x[n], std::optional<std::size_t>(best)) << "seed " << seed << " wd " << n;
    }
  }
}

TEST(RunBaseline, ArbEqualsProposedWithOneDevicePerCell) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_bs = 3;
    cfg.num_wd = 1;
    const Scenario s = generate(cfg);
    TableCache cache(s, UtilityKind::ConcaveAccuracy, FixedCompute::HalfMaxModel, 1);
    const Assignment arb = run_baseline(BaselineKind::ARB, cache);
    const Assignment prop = associate(cache);
    EXPECT_EQ(arb.total_utility, prop.total_utility);
  }
}

TEST(RunBaseline, AllValidAndTablesAgree) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Scenario s = default_layout(seed, 20);
    for (UtilityKind kind : {UtilityKind::ConcaveAccuracy, UtilityKind::GeneralReciprocal}) {
      TableCache cache(s, kind, FixedCompute::HalfMaxModel, 0);
      for (BaselineKind b :
           {BaselineKind::TC, BaselineKind::FSC, BaselineKind::ARB, BaselineKind::NUA,
            BaselineKind::FAN}) {
        const Assignment a = run_baseline(b, cache);
        EXPECT_TRUE(validate_assignment(a, s).empty()) << to_string(b);
        double sum = 0.0;
        for (std::size_t n = 0; n < s.num_wd(); ++n) {
          sum += a.schedules[n].utility;
          if (b == BaselineKind::TC && a.schedules[n].utility > 0.0) {
            EXPECT_EQ(a.schedules[n].utility, utility_of_accuracy(s.devices[n].app.eta2, kind));
            EXPECT_EQ(a.schedules[n].c_cycles, 0.0);
          }
        }
        EXPECT_NEAR(sum, a.total_utility, 1e-9 * std::max(1.0, sum)) << to_string(b);
      }
    }
  }
}

TEST(RunBaseline, NuaUsesNearestCells) {
  const Scenario s = default_layout(4, 15);
  const Assignment a = run_baseline(BaselineKind::NUA, s, UtilityKind::ConcaveAccuracy, {});
  const Assignment f = run_baseline(BaselineKind::FAN, s, UtilityKind::ConcaveAccuracy, {});
  EXPECT_EQ(a.association, nua_assoc(s));
  EXPECT_EQ(f.association, nua_assoc(s));
}

TEST(RunBaseline, ArbNeverBeatsDpOnSameAssociation) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Scenario s = default_layout(seed, 20);
    TableCache cache(s, UtilityKind::GeneralReciprocal, FixedCompute::HalfMaxModel, 0);
    const Assignment arb = run_baseline(BaselineKind::ARB, cache);
    const Assignment dp = assemble_assignment(s, cache.get(SchedulingScheme::Adaptive),
                                              arb.association, Allocator::DynamicProgramming);
    EXPECT_LE(arb.total_utility, dp.total_utility);
  }
}

TEST(RunBaseline, FanLeavesSomeDevicesEmptyHanded) {
  int zero = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Scenario s = default_layout(seed, 50);
    const Assignment f = run_baseline(BaselineKind::FAN, s, UtilityKind::ConcaveAccuracy, {});
    for (const auto& d : f.schedules) zero += d.utility == 0.0;
  }
  EXPECT_GT(zero, 0);
}
