#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "hdnet/error.hpp"
#include "hdnet/network.hpp"

using namespace hdnet;

TEST(LinkCapacity, FiniteAndUnbounded) {
  EXPECT_EQ(LinkCapacity::finite(0.5).value(), 0.5);
  EXPECT_FALSE(LinkCapacity::finite(0.5).is_unbounded());
  EXPECT_TRUE(LinkCapacity::unbounded().is_unbounded());
  EXPECT_LT(LinkCapacity::finite(1e300), LinkCapacity::unbounded());
  EXPECT_EQ(to_string(LinkCapacity::unbounded()), "inf");
}

TEST(LinkCapacity, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(LinkCapacity::finite(-1.0), Error);
  EXPECT_THROW(LinkCapacity::finite(std::nan("")), Error);
  EXPECT_THROW(LinkCapacity::finite(std::numeric_limits<double>::infinity()), Error);
}

TEST(Masks, RenderLeftToRight) {
  // Relay 1 is bit 0 and the leftmost character.
  EXPECT_EQ(to_string(StateMask{0b001}, 3), "100");
  EXPECT_EQ(to_string(StateMask{0b110}, 3), "011");
  EXPECT_EQ(parse_mask<StateMask>("011").bits, 0b110u);
  EXPECT_EQ(parse_mask<CutMask>("1").bits, 1u);
  EXPECT_THROW(parse_mask_bits("012"), Error);
}

TEST(Masks, ComplementAndFull) {
  EXPECT_EQ(CutMask::full(3).bits, 0b111u);
  EXPECT_EQ(CutMask{0b101}.complement(3).bits, 0b010u);
  EXPECT_EQ(CutMask{0b101}.count(), 2);
}

TEST(Masks, RelayIndicesRoundTrip) {
  const std::vector<int> idx{1, 3};
  const RelaySet s = relay_set(idx, 4);
  EXPECT_EQ(s.bits, 0b0101u);
  EXPECT_EQ(relay_indices(s), idx);
  const std::vector<int> bad{0};
  EXPECT_THROW(relay_set(bad, 4), Error);
  const std::vector<int> dup{2, 2};
  EXPECT_THROW(relay_set(dup, 4), Error);
}

TEST(DiamondNetwork, Construction) {
  const std::vector<double> l{1.0, 0.4};
  const std::vector<double> r{0.5, 2.8};
  const auto net = DiamondNetwork::from_values(l, r);
  EXPECT_EQ(net.size(), 2);
  EXPECT_EQ(net.uplink(1).value(), 0.4);
  EXPECT_EQ(net.label(1), 2);
  EXPECT_FALSE(net.has_unbounded());
  EXPECT_DOUBLE_EQ(net.finite_sum(), 4.7);
}

TEST(DiamondNetwork, Validation) {
  using V = std::vector<LinkCapacity>;
  EXPECT_THROW(DiamondNetwork(V{LinkCapacity::finite(1)}, V{}), Error);
  EXPECT_THROW(DiamondNetwork(V{}, V{}), Error);
  EXPECT_THROW(DiamondNetwork(V{LinkCapacity::finite(1)}, V{LinkCapacity::finite(1)}, {0}), Error);
  EXPECT_THROW(DiamondNetwork(V(2, LinkCapacity::finite(1)), V(2, LinkCapacity::finite(1)), {3, 3}),
               Error);
  const V many(kMaxRelays + 1, LinkCapacity::finite(1));
  EXPECT_THROW(DiamondNetwork(many, many), Error);
}

TEST(DiamondNetwork, UnboundedLinks) {
  const DiamondNetwork net({LinkCapacity::finite(0.5), LinkCapacity::unbounded()},
                           {LinkCapacity::unbounded(), LinkCapacity::finite(0.5)});
  EXPECT_TRUE(net.has_unbounded());
  EXPECT_DOUBLE_EQ(net.finite_sum(), 1.0);
}

TEST(Schedule, DropsZerosAndValidates) {
  const Schedule s(2, {{0b01, 0.5}, {0b10, 0.5}, {0b11, 0.0}});
  EXPECT_EQ(s.support_size(), 2u);
  EXPECT_EQ(s.probability(StateMask{0b01}), 0.5);
  EXPECT_EQ(s.probability(StateMask{0b11}), 0.0);
  EXPECT_THROW(Schedule(2, {{0b01, 0.7}}), Error);
  EXPECT_THROW(Schedule(2, {{0b01, 1.5}, {0b10, -0.5}}), Error);
  EXPECT_THROW(Schedule(2, {{0b100, 1.0}}), Error);
}

TEST(Schedule, DenseRoundTrip) {
  const std::vector<double> dense{0.25, 0.0, 0.75, 0.0};
  const auto s = Schedule::from_dense(2, dense);
  EXPECT_EQ(s.support_size(), 2u);
  EXPECT_EQ(s.dense(), dense);
  EXPECT_TRUE(approx_equal(s, Schedule(2, {{0, 0.25}, {2, 0.75 + 1e-12}}), 1e-9));
  EXPECT_EQ(Schedule::point(3, StateMask{5}).probability(StateMask{5}), 1.0);
}
