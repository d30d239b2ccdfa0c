#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hdnet/capacity.hpp"
#include "hdnet/error.hpp"
#include "hdnet/model.hpp"
#include "hdnet/selection.hpp"

using namespace hdnet;

namespace {

DiamondNetwork two_relay_example() {
  const std::vector<double> l{1.0, 0.4};
  const std::vector<double> r{0.5, 2.8};
  return DiamondNetwork::from_values(l, r);
}

// Independent oracle: best k-subset by brute-force hd_capacity.
double brute_best(const DiamondNetwork& net, int k) {
  double best = 0.0;
  const int n = net.size();
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (std::popcount(s) != k) continue;
    best = std::max(best, hd_capacity(subnetwork(net, RelaySet{s})).value);
  }
  return best;
}

}  // namespace

TEST(WorstRelay, Examples) {
  EXPECT_EQ(worst_relay_index(two_relay_example()), 1);
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(worst_relay_index(gen_half_tight(n)), 1);
  EXPECT_EQ(worst_relay_index(DiamondNetwork::from_values(std::vector<double>{2.0},
                                                          std::vector<double>{3.0})),
            1);
}

TEST(FractionOf, Conventions) {
  EXPECT_EQ(fraction_of(0.5, 1.0), 0.5);
  EXPECT_EQ(fraction_of(0.0, 0.0), 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(fraction_of(inf, inf), 1.0);
  EXPECT_EQ(fraction_of(3.0, inf), 0.0);
}

TEST(DropWorst, HalfTightAdversarialRemoval) {
  for (int n = 2; n <= 6; ++n) {
    const std::vector<int> force{n};
    const auto rep = drop_worst(gen_half_tight(n), n - 1, force);
    EXPECT_NEAR(rep.value, 0.5, 1e-9);
    EXPECT_NEAR(rep.full_value, 1.0, 1e-9);
    EXPECT_NEAR(rep.fraction, 0.5, 1e-9);
    EXPECT_EQ(rep.bound, 0.5);
    EXPECT_TRUE(rep.meets_bound());
    EXPECT_EQ(rep.removed, force);
  }
}

TEST(DropWorst, DefaultTieBreakKeepsLastRelay) {
  const auto rep = drop_worst(gen_half_tight(4), 3);
  EXPECT_EQ(rep.selected.back(), 4);
  EXPECT_NEAR(rep.fraction, 1.0, 1e-9);
  EXPECT_EQ(rep.value_kind, ValueKind::kCapacity);
}

TEST(DropWorst, IdentityAndErrors) {
  const auto net = gen_random(4, 3);
  const auto rep = drop_worst(net, 4);
  EXPECT_EQ(rep.fraction, 1.0);
  EXPECT_EQ(rep.selected, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_THROW(drop_worst(net, 0), Error);
  EXPECT_THROW(drop_worst(net, 5), Error);
  const std::vector<int> wrong_count{1, 2};
  EXPECT_THROW(drop_worst(net, 3, wrong_count), Error);
}

TEST(ScheduleReuse, WorstCaseRetainsFraction) {
  for (int n = 2; n <= 8; ++n) {
    const auto net = gen_worst_case(n);
    const auto rep = select_drop_one_schedule_reuse(net);
    EXPECT_NEAR(rep.fraction, (n - 1.0) / n, 1e-9) << "N=" << n;
    EXPECT_EQ(rep.value_kind, ValueKind::kScheduleRate);
    ASSERT_TRUE(rep.selected_capacity);
    EXPECT_GE(*rep.selected_capacity, rep.value - 1e-9);
  }
}

TEST(ScheduleReuse, HalfTightAndSymmetric) {
  const auto ht = select_drop_one_schedule_reuse(gen_half_tight(4));
  EXPECT_GE(ht.fraction, 0.75 - 1e-9);
  const auto sym = select_drop_one_schedule_reuse(gen_worst_case(2));
  EXPECT_GE(sym.fraction, 0.5 - 1e-9);
}

TEST(Iterative, TrivialCases) {
  const auto net = gen_random(5, 17);
  const auto full = select_k_iterative(net, 5);
  EXPECT_EQ(full.fraction, 1.0);
  EXPECT_TRUE(full.round_ratios.empty());
  const auto one_round = select_k_iterative(net, 4);
  const auto reuse = select_drop_one_schedule_reuse(net);
  EXPECT_EQ(one_round.selected, reuse.selected);
  EXPECT_NEAR(one_round.value, reuse.value, 1e-12);
  EXPECT_THROW(select_k_iterative(net, 0), Error);
  EXPECT_THROW(select_k_iterative(net, 2, gen_random_schedule(4, 1)), Error);
}

TEST(Iterative, RandomNetsMeetBoundsAndExhaustiveDominates) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto net = gen_random(n, seed);
    for (int k = 1; k <= n; ++k) {
      const auto it = select_k_iterative(net, k);
      EXPECT_TRUE(it.meets_bound()) << "seed " << seed << " k " << k;
      EXPECT_TRUE(it.rounds_meet_bounds());
      EXPECT_EQ(it.round_ratios.size(), static_cast<std::size_t>(n - k));
      const auto ex = select_k_exhaustive(net, k);
      EXPECT_TRUE(ex.meets_bound());
      ASSERT_TRUE(it.selected_capacity);
      EXPECT_GE(ex.value, *it.selected_capacity - 1e-9);
      EXPECT_GE(*it.selected_capacity, it.value - 1e-9);
    }
  }
}

TEST(Iterative, ArbitraryScheduleMeetsRateBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto net = gen_random(5, 100 + seed);
    const auto sched = gen_random_schedule(5, seed);
    for (int k = 1; k <= 5; ++k) {
      EXPECT_TRUE(select_k_iterative(net, k, sched).meets_bound());
    }
  }
}

TEST(Exhaustive, WorstCaseFig2Ratio) {
  for (int n = 2; n <= 8; ++n) {
    const auto rep = select_k_exhaustive(gen_worst_case(n), n - 1);
    EXPECT_NEAR(rep.full_value, 1.0, 1e-9);
    EXPECT_NEAR(rep.fraction, (n - 1.0) / n, 1e-9) << "N=" << n;
  }
}

TEST(Exhaustive, TwoRelayExamplePicksSecondRelay) {
  const auto net = two_relay_example();
  const auto rep = select_k_exhaustive(net, 1);
  EXPECT_EQ(rep.selected, std::vector<int>{2});
  EXPECT_NEAR(rep.value, 7.0 / 20, 1e-12);
  // Full-duplex ranking by min(l, r) would pick relay 1 with 1/2.
  EXPECT_GT(std::min(net.uplink(0).value(), net.downlink(0).value()),
            std::min(net.uplink(1).value(), net.downlink(1).value()));
}

TEST(Exhaustive, ThreeRelayExamplePicksUnboundedRelay) {
  const double c = 0.8;
  const DiamondNetwork net({LinkCapacity::finite(c), LinkCapacity::finite(c), LinkCapacity::finite(c)},
                           {LinkCapacity::finite(c), LinkCapacity::finite(c), LinkCapacity::unbounded()});
  const auto rep = select_k_exhaustive(net, 1);
  EXPECT_EQ(rep.selected, std::vector<int>{3});
  EXPECT_NEAR(rep.value, c, 1e-12);
}

TEST(Exhaustive, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = gen_random(5, 900 + seed);
    for (int k = 1; k <= 5; ++k) {
      EXPECT_NEAR(select_k_exhaustive(net, k).value, brute_best(net, k), 1e-9);
    }
  }
}

TEST(Exhaustive, Guard) {
  EXPECT_THROW(select_k_exhaustive(gen_random(11, 1), 10), Error);
  SelectionOptions opts;
  opts.exhaustive_max_relays = 3;
  EXPECT_THROW(select_k_exhaustive(gen_random(4, 1), 2, opts), Error);
}

TEST(GuaranteeBound, Examples) {
  EXPECT_EQ(guarantee_bound(10, 1, Strategy::kExhaustive), 0.25);
  EXPECT_EQ(guarantee_bound(10, 7, Strategy::kExhaustive), 0.7);
  EXPECT_EQ(guarantee_bound(10, 9, Strategy::kExhaustive), 0.9);
  EXPECT_EQ(guarantee_bound(4, 2, Strategy::kExhaustive), 0.5);
  EXPECT_EQ(guarantee_bound(3, 1, Strategy::kExhaustive), 1.0 / 3);
  for (int n = 1; n <= 6; ++n) {
    for (auto s : {Strategy::kWorstDrop, Strategy::kScheduleReuse, Strategy::kIterative,
                   Strategy::kExhaustive}) {
      EXPECT_EQ(guarantee_bound(n, n, s), 1.0);
    }
  }
  EXPECT_EQ(guarantee_bound(6, 5, Strategy::kWorstDrop), 0.5);
  EXPECT_EQ(guarantee_bound(6, 3, Strategy::kWorstDrop), 0.125);
  EXPECT_EQ(guarantee_bound(10, 1, Strategy::kIterative), 0.1);
  EXPECT_THROW(guarantee_bound(3, 4, Strategy::kExhaustive), Error);
  EXPECT_THROW(guarantee_bound(3, 0, Strategy::kExhaustive), Error);
}

TEST(StrategyNames, RoundTrip) {
  for (auto s : {Strategy::kWorstDrop, Strategy::kScheduleReuse, Strategy::kIterative,
                 Strategy::kExhaustive}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_EQ(to_string(Strategy::kWorstDrop), "worst-drop");
  EXPECT_THROW(parse_strategy("greedy"), Error);
}
