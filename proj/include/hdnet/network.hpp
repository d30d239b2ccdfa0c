#pragma once

// Domain types for Gaussian half-duplex diamond networks: link capacities,
// relay bit masks, networks and listen/transmit schedules.
//
// Relays are numbered 1..n in everything user facing (labels, JSON, reports)
// and occupy bit position i-1 in every mask. Masks render left to right as
// "s_1 s_2 ... s_n", so "011" means relay 1 listens, relays 2 and 3 transmit.

#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdnet {

inline constexpr int kMaxRelays = 30;

// Capacity of a single point-to-point link in bits per channel use.
// Unbounded stands for a link whose capacity is taken to infinity; it is
// stored as +inf so that max/+ absorb it without special cases.
class LinkCapacity {
 public:
  constexpr LinkCapacity() = default;

  static LinkCapacity finite(double bits);
  static constexpr LinkCapacity unbounded() {
    return LinkCapacity(std::numeric_limits<double>::infinity());
  }

  bool is_unbounded() const { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }

  friend auto operator<=>(const LinkCapacity&, const LinkCapacity&) = default;

 private:
  explicit constexpr LinkCapacity(double v) : value_(v) {}
  double value_ = 0.0;
};

std::string to_string(const LinkCapacity& c);

template <class Tag>
struct BitMask {
  std::uint32_t bits = 0;

  constexpr bool test(int pos) const { return (bits >> pos) & 1u; }
  constexpr BitMask with(int pos) const { return BitMask{bits | (1u << pos)}; }
  constexpr BitMask complement(int n) const { return BitMask{~bits & full(n).bits}; }
  constexpr int count() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }

  static constexpr BitMask full(int n) {
    return BitMask{n >= 32 ? ~0u : ((1u << n) - 1u)};
  }

  friend constexpr auto operator<=>(const BitMask&, const BitMask&) = default;
};

// Bit set <=> relay transmitting.
using StateMask = BitMask<struct StateTag>;
// Bit set <=> relay on the side of the destination.
using CutMask = BitMask<struct CutTag>;
// Bit set <=> relay kept in a subnetwork / selected.
using RelaySet = BitMask<struct RelaySetTag>;

// Renders the low `n` bits left to right ("s_1 ... s_n").
template <class Tag>
std::string to_string(BitMask<Tag> mask, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (mask.test(i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint32_t parse_mask_bits(std::string_view text);

template <class Mask>
Mask parse_mask(std::string_view text) {
  return Mask{parse_mask_bits(text)};
}

// 1-based relay indices <-> mask. Throws on out-of-range or duplicate indices.
RelaySet relay_set(std::span<const int> indices, int n);
std::vector<int> relay_indices(RelaySet set);

class DiamondNetwork {
 public:
  DiamondNetwork(std::vector<LinkCapacity> uplinks, std::vector<LinkCapacity> downlinks,
                 std::vector<int> labels = {}, std::string name = {});

  // Convenience for finite networks.
  static DiamondNetwork from_values(std::span<const double> uplinks,
                                    std::span<const double> downlinks);

  int size() const { return static_cast<int>(uplinks_.size()); }
  const LinkCapacity& uplink(int pos) const { return uplinks_.at(static_cast<std::size_t>(pos)); }
  const LinkCapacity& downlink(int pos) const { return downlinks_.at(static_cast<std::size_t>(pos)); }
  const std::vector<LinkCapacity>& uplinks() const { return uplinks_; }
  const std::vector<LinkCapacity>& downlinks() const { return downlinks_; }

  // Original 1-based index of the relay at `pos` (pos + 1 when unlabeled).
  int label(int pos) const;
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }

  const std::string& name() const { return name_; }
  bool has_unbounded() const;

  // Sum of all finite link capacities.
  double finite_sum() const;

  friend bool operator==(const DiamondNetwork&, const DiamondNetwork&) = default;

 private:
  std::vector<LinkCapacity> uplinks_;
  std::vector<LinkCapacity> downlinks_;
  std::vector<int> labels_;
  std::string name_;
};

// Probability distribution over the 2^n joint relay states. Only states with
// positive probability are stored; iteration order is ascending mask value.
class Schedule {
 public:
  static constexpr double kSumTolerance = 1e-9;

  Schedule(int n, std::map<std::uint32_t, double> probs);

  // Dense vector indexed by mask value; length must be 2^n.
  static Schedule from_dense(int n, std::span<const double> probs);
  static Schedule point(int n, StateMask state);

  int size() const { return n_; }
  const std::map<std::uint32_t, double>& entries() const { return probs_; }
  double probability(StateMask s) const;
  std::size_t support_size() const { return probs_.size(); }
  std::vector<double> dense() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  int n_;
  std::map<std::uint32_t, double> probs_;
};

bool approx_equal(const Schedule& a, const Schedule& b, double tol);

}  // namespace hdnet
