#pragma once

// Relay selection: pick k of the N relays of a diamond network and report how
// much of the full network's approximate capacity the selection keeps.
//
//   worst-drop      drop the N-k relays with the smallest single-relay
//                   capacity; guarantee 2^-(N-k) on capacity.
//   schedule-reuse  k = N-1; reuse an optimal full-network schedule on every
//                   (N-1)-relay subnetwork and keep the best rate;
//                   guarantee (N-1)/N on rate.
//   iterative       N-k rounds of schedule-reuse with the marginalized
//                   schedule; guarantee k/N on rate.
//   exhaustive      best k-subset by half-duplex capacity (oracle).
//
// Every tie is broken towards the lowest relay index.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdnet/capacity.hpp"
#include "hdnet/network.hpp"

namespace hdnet {

enum class Strategy { kWorstDrop, kScheduleReuse, kIterative, kExhaustive };
enum class ValueKind { kCapacity, kScheduleRate };

std::string_view to_string(Strategy s);
std::string_view to_string(ValueKind v);
Strategy parse_strategy(std::string_view text);

inline constexpr int kExhaustiveGuard = 10;
inline constexpr double kGuaranteeTolerance = 1e-8;

struct SelectionOptions {
  CapacityOptions capacity;
  int exhaustive_max_relays = kExhaustiveGuard;
};

struct SelectionReport {
  Strategy strategy = Strategy::kExhaustive;
  std::vector<int> selected;  // relay labels, ascending
  int k = 0;
  ValueKind value_kind = ValueKind::kCapacity;
  double value = 0.0;
  double full_value = 0.0;
  double fraction = 0.0;
  double bound = 0.0;
  // Rate-valued reports also carry the capacity of the selected subnetwork.
  std::optional<double> selected_capacity;
  // Iterative selection: relay removed, achieved ratio and required ratio per round.
  std::vector<int> removed;
  std::vector<double> round_ratios;
  std::vector<double> round_bounds;

  bool meets_bound(double tol = kGuaranteeTolerance) const { return fraction >= bound - tol; }
  bool rounds_meet_bounds(double tol = kGuaranteeTolerance) const;
};

// value / full with the conventions 0/0 = 1, inf/inf = 1, finite/inf = 0.
double fraction_of(double value, double full);

// Position (1-based) of the relay with the smallest single-relay capacity.
int worst_relay_index(const DiamondNetwork& net);

// `force_remove` (1-based positions, exactly N-k of them) replaces the
// single-capacity ranking; used to exercise adversarial removals.
SelectionReport drop_worst(const DiamondNetwork& net, int k, std::span<const int> force_remove = {},
                           const SelectionOptions& opts = {});

SelectionReport select_drop_one_schedule_reuse(const DiamondNetwork& net,
                                               const SelectionOptions& opts = {});

// Starts from `schedule` (default: an optimal full-network schedule). The
// reported full_value is the full network's rate under that schedule.
SelectionReport select_k_iterative(const DiamondNetwork& net, int k,
                                   const std::optional<Schedule>& schedule = std::nullopt,
                                   const SelectionOptions& opts = {});

SelectionReport select_k_exhaustive(const DiamondNetwork& net, int k,
                                    const SelectionOptions& opts = {});

struct BestSubnetwork {
  RelaySet relays;
  double value = 0.0;
};

// Best k-subset by half-duplex capacity without a guard on N; every
// subnetwork LP still respects opts.capacity.max_relays.
BestSubnetwork best_subnetwork(const DiamondNetwork& net, int k, const SelectionOptions& opts = {});

// Worst-case fraction guaranteed for (N, k) by the given strategy.
double guarantee_bound(int n, int k, Strategy strategy);

}  // namespace hdnet
