#pragma once

// Cut values, fixed-schedule rates, full-duplex min cut and the half-duplex
// approximate capacity
//
//   C = max_{lambda} min_{A} sum_s lambda_s (max_{i in L_s & A} l_i
//                                           + max_{i in T_s & A^c} r_i)
//
// solved as a matrix game (scheduler on columns, cut adversary on rows).
//
// Unbounded links: a cut is "unbounded" when some relay in A has an Unbounded
// uplink or some relay outside A has an Unbounded downlink. Such a cut has an
// infinite entry in at least one state, and in the limit of the link going to
// infinity it never attains the minimum, so every routine here skips it. An
// empty max is 0.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdnet/network.hpp"

namespace hdnet {

enum class Arithmetic { kFloat, kRational };

inline constexpr int kDefaultLpGuard = 16;
inline constexpr int kFdEnumerationGuard = 24;

// Tolerance used to report tight cuts in floating mode.
inline constexpr double kTightTolerance = 1e-9;

struct CapacityOptions {
  Arithmetic arithmetic = Arithmetic::kFloat;
  // Largest relay count for which the 2^n x 2^n game is materialized.
  int max_relays = kDefaultLpGuard;
};

struct CapacityResult {
  double value = 0.0;  // +inf when every cut is unbounded
  std::optional<Schedule> optimal_schedule;  // half-duplex only
  std::vector<CutMask> tight_cuts;           // ascending mask order
  Arithmetic arithmetic = Arithmetic::kFloat;
  std::string exact_value;  // "p/q" in rational mode
};

struct RateValue {
  double value = 0.0;
  CutMask min_cut;
};

struct DualResult {
  double value = 0.0;
  std::vector<std::pair<CutMask, double>> cut_distribution;  // positive mass only
  std::string exact_value;
};

// Guard override from the HDNET_LP_GUARD environment variable, or the default.
int lp_guard_from_env();

bool cut_is_unbounded(const DiamondNetwork& net, CutMask cut);

// max_{i in L_s & A} l_i + max_{i in T_s & A^c} r_i (may be +inf).
double cut_state_value(const DiamondNetwork& net, CutMask cut, StateMask state);

// Expected cut value sum_s lambda_s * cut_state_value; +inf for unbounded cuts.
double scheduled_cut_value(const DiamondNetwork& net, const Schedule& sched, CutMask cut);

// min over cuts of the scheduled cut value; min_cut is the smallest minimizer.
RateValue fixed_schedule_rate(const DiamondNetwork& net, const Schedule& sched);

// min_A (max_{i in A} l_i + max_{i notin A} r_i) by enumeration of all cuts.
CapacityResult fd_capacity(const DiamondNetwork& net);

// Same value in O(n log n): optimal cuts are prefixes of the relays sorted by l.
double fd_capacity_fast(const DiamondNetwork& net);

// l r / (l + r); 0 when both are 0. Unbounded arguments take the limit.
double single_relay_capacity(double l, double r);
double single_relay_capacity(LinkCapacity l, LinkCapacity r);

CapacityResult hd_capacity(const DiamondNetwork& net, const CapacityOptions& opts = {});

// min over cut distributions of max over states, solved as its own LP.
DualResult dual_capacity(const DiamondNetwork& net, const CapacityOptions& opts = {});

struct SparsifyOptions {
  int max_relays = 4;
  double tolerance = 1e-9;
};

// Schedule with at most n+1 states whose rate reaches `target`, found by
// enumerating supports in order of size, then lexicographically. nullopt when
// no such support exists.
std::optional<Schedule> sparsify_schedule(const DiamondNetwork& net, double target,
                                          const SparsifyOptions& opts = {});

}  // namespace hdnet
