#pragma once

// Operations on diamond networks and schedules: construction from channel
// gains, subnetwork projection, natural-schedule marginalization and the
// generators for the constructed worst-case networks.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>

#include "hdnet/network.hpp"

namespace hdnet {

// l_i = log2(1 + |h_is|^2), r_i = log2(1 + |h_di|^2).
DiamondNetwork links_from_gains(std::span<const std::complex<double>> source_gains,
                                std::span<const std::complex<double>> dest_gains);
// Same, from squared magnitudes |h|^2.
DiamondNetwork links_from_power_gains(std::span<const double> source_power,
                                      std::span<const double> dest_power);

// Relays of `keep` in ascending original order; labels carry the parent's labels.
DiamondNetwork subnetwork(const DiamondNetwork& net, RelaySet keep);

// Marginal of `sched` on the relays in `keep`: the probability of a sub-state
// is the total mass of full states that restrict to it.
Schedule derive_natural_schedule(const Schedule& sched, RelaySet keep);

// Restriction of a full state to the relays of `keep`, packed into |keep| bits.
StateMask restrict_state(StateMask full, RelaySet keep);

// l_i = l_{floor(N/2)+i} = 2i/N, r_i = r_{floor(N/2)+i} = (N-2i+2)/N, and for
// odd N the last relay has (big_l, 1/N).
DiamondNetwork gen_worst_case(int n, LinkCapacity big_l = LinkCapacity::unbounded());

// N-1 relays with (1/2, big_l) followed by one relay with (big_l, 1/2).
DiamondNetwork gen_half_tight(int n, LinkCapacity big_l = LinkCapacity::unbounded());

// Two equiprobable complementary states; for odd N the last relay always transmits.
Schedule gen_two_phase_schedule(int n);

struct CapacityRange {
  double lo = 0.0;
  double hi = 1.0;
};

// All 2N capacities i.i.d. uniform on [lo, hi]; deterministic in `seed`.
DiamondNetwork gen_random(int n, std::uint64_t seed, CapacityRange range = {});

// Capacities k / denominator with k uniform in [0, max_numerator]. With a
// power-of-two denominator every value is exact in binary floating point.
DiamondNetwork gen_random_dyadic(int n, std::uint64_t seed, int max_numerator = 64,
                                 int denominator = 16);

// Random point of the simplex over the 2^n states; `support` limits how many
// states receive mass (0 = all).
Schedule gen_random_schedule(int n, std::uint64_t seed, int support = 0);

}  // namespace hdnet
