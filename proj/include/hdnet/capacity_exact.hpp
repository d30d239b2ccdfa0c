#pragma once

// Exact-rational counterparts of the capacity routines. Link capacities are
// converted from double without rounding, so results are exact for the
// network as stored.

#include <cstdint>
#include <map>

#include "hdnet/capacity.hpp"
#include "hdnet/rational.hpp"

namespace hdnet {

using ExactSchedule = std::map<std::uint32_t, Rational>;

struct ExactCapacity {
  bool unbounded = false;  // every cut is unbounded; value is meaningless
  Rational value;
  ExactSchedule schedule;
};

ExactCapacity hd_capacity_exact(const DiamondNetwork& net, int max_relays = kDefaultLpGuard);
ExactCapacity dual_capacity_exact(const DiamondNetwork& net, int max_relays = kDefaultLpGuard);

// min over bounded cuts of sum_s lambda_s * cut_state_value, exactly.
Rational fixed_schedule_rate_exact(const DiamondNetwork& net, const ExactSchedule& sched);

}  // namespace hdnet
