#include "hdnet/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hdnet/error.hpp"
#include "hdnet/model.hpp"

namespace hdnet {

namespace {

void check_k(const DiamondNetwork& net, int k) {
  if (net.size() < 1) throw_invalid("network has no relays");
  if (k < 1 || k > net.size()) {
    throw_invalid("k must be in [1:" + std::to_string(net.size()) + "], got " + std::to_string(k));
  }
}

std::vector<int> labels_of(const DiamondNetwork& net, RelaySet keep) {
  std::vector<int> out;
  for (int i = 0; i < net.size(); ++i) {
    if (keep.test(i)) out.push_back(net.label(i));
  }
  return out;
}

double capacity_of(const DiamondNetwork& net, RelaySet keep, const SelectionOptions& opts) {
  return hd_capacity(subnetwork(net, keep), opts.capacity).value;
}

void finish(SelectionReport& rep) {
  rep.fraction = fraction_of(rep.value, rep.full_value);
}

// Advances `idx` to the next k-combination of [0:n) in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

RelaySet mask_of(const std::vector<int>& idx) {
  RelaySet s{};
  for (int i : idx) s = s.with(i);
  return s;
}

struct DropStep {
  int position = -1;  // position within the current network
  double rate = 0.0;
};

// Best single removal from `net` when the remaining relays reuse `sched`.
DropStep best_drop(const DiamondNetwork& net, const Schedule& sched) {
  const int n = net.size();
  DropStep best;
  best.rate = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const RelaySet keep{RelaySet::full(n).bits & ~(1u << i)};
    const double r =
        fixed_schedule_rate(subnetwork(net, keep), derive_natural_schedule(sched, keep)).value;
    if (r > best.rate) best = {i, r};
  }
  return best;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kWorstDrop: return "worst-drop";
    case Strategy::kScheduleReuse: return "schedule-reuse";
    case Strategy::kIterative: return "iterative";
    case Strategy::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

std::string_view to_string(ValueKind v) {
  return v == ValueKind::kCapacity ? "capacity" : "rate";
}

Strategy parse_strategy(std::string_view text) {
  for (Strategy s : {Strategy::kWorstDrop, Strategy::kScheduleReuse, Strategy::kIterative,
                     Strategy::kExhaustive}) {
    if (text == to_string(s)) return s;
  }
  throw_invalid("unknown strategy '" + std::string(text) +
                "' (expected worst-drop, schedule-reuse, iterative or exhaustive)");
}

bool SelectionReport::rounds_meet_bounds(double tol) const {
  for (std::size_t i = 0; i < round_ratios.size(); ++i) {
    if (round_ratios[i] < round_bounds[i] - tol) return false;
  }
  return true;
}

double fraction_of(double value, double full) {
  if (std::isinf(full)) return std::isinf(value) ? 1.0 : 0.0;
  if (full <= 0.0) return 1.0;
  return value / full;
}

int worst_relay_index(const DiamondNetwork& net) {
  if (net.size() < 1) throw_invalid("network has no relays");
  int worst = 0;
  double worst_value = single_relay_capacity(net.uplink(0), net.downlink(0));
  for (int i = 1; i < net.size(); ++i) {
    const double v = single_relay_capacity(net.uplink(i), net.downlink(i));
    if (v < worst_value) {
      worst = i;
      worst_value = v;
    }
  }
  return worst + 1;
}

SelectionReport drop_worst(const DiamondNetwork& net, int k, std::span<const int> force_remove,
                           const SelectionOptions& opts) {
  check_k(net, k);
  const int n = net.size();
  RelaySet keep = RelaySet::full(n);
  if (!force_remove.empty()) {
    if (static_cast<int>(force_remove.size()) != n - k) {
      throw_invalid("force_remove must list exactly N-k = " + std::to_string(n - k) + " relays");
    }
    const RelaySet drop = relay_set(force_remove, n);
    if (drop.count() != n - k) throw_invalid("force_remove contains duplicates");
    keep = drop.complement(n);
  } else {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> single(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      single[static_cast<std::size_t>(i)] = single_relay_capacity(net.uplink(i), net.downlink(i));
    }
    // Smallest single capacity first; ties drop the lowest index first, the
    // same relay worst_relay_index names.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double va = single[static_cast<std::size_t>(a)];
      const double vb = single[static_cast<std::size_t>(b)];
      if (va != vb) return va < vb;
      return a < b;
    });
    for (int j = 0; j < n - k; ++j) keep.bits &= ~(1u << order[static_cast<std::size_t>(j)]);
  }

  SelectionReport rep;
  rep.strategy = Strategy::kWorstDrop;
  rep.k = k;
  rep.selected = labels_of(net, keep);
  rep.removed = labels_of(net, keep.complement(n));
  rep.value_kind = ValueKind::kCapacity;
  rep.full_value = hd_capacity(net, opts.capacity).value;
  rep.value = capacity_of(net, keep, opts);
  rep.bound = guarantee_bound(n, k, Strategy::kWorstDrop);
  finish(rep);
  return rep;
}

SelectionReport select_drop_one_schedule_reuse(const DiamondNetwork& net,
                                               const SelectionOptions& opts) {
  const int n = net.size();
  if (n < 2) throw_invalid("schedule reuse needs at least 2 relays");
  const auto full = hd_capacity(net, opts.capacity);
  const DropStep step = best_drop(net, *full.optimal_schedule);
  const RelaySet keep{RelaySet::full(n).bits & ~(1u << step.position)};

  SelectionReport rep;
  rep.strategy = Strategy::kScheduleReuse;
  rep.k = n - 1;
  rep.selected = labels_of(net, keep);
  rep.value_kind = ValueKind::kScheduleRate;
  rep.full_value = full.value;
  rep.value = step.rate;
  rep.selected_capacity = capacity_of(net, keep, opts);
  rep.removed = {net.label(step.position)};
  rep.bound = guarantee_bound(n, n - 1, Strategy::kScheduleReuse);
  finish(rep);
  rep.round_ratios = {rep.fraction};
  rep.round_bounds = {rep.bound};
  return rep;
}

SelectionReport select_k_iterative(const DiamondNetwork& net, int k,
                                   const std::optional<Schedule>& schedule,
                                   const SelectionOptions& opts) {
  check_k(net, k);
  const int n = net.size();
  Schedule sched = schedule ? *schedule : *hd_capacity(net, opts.capacity).optimal_schedule;
  if (sched.size() != n) throw_invalid("schedule width differs from the relay count");

  SelectionReport rep;
  rep.strategy = Strategy::kIterative;
  rep.k = k;
  rep.value_kind = ValueKind::kScheduleRate;
  rep.full_value = fixed_schedule_rate(net, sched).value;

  DiamondNetwork current = net;
  double rate = rep.full_value;
  for (int m = n; m > k; --m) {
    const DropStep step = best_drop(current, sched);
    const RelaySet keep{RelaySet::full(m).bits & ~(1u << step.position)};
    rep.removed.push_back(current.label(step.position));
    rep.round_ratios.push_back(fraction_of(step.rate, rate));
    rep.round_bounds.push_back(static_cast<double>(m - 1) / m);
    sched = derive_natural_schedule(sched, keep);
    current = subnetwork(current, keep);
    rate = step.rate;
  }

  rep.selected = labels_of(current, RelaySet::full(current.size()));
  rep.value = rate;
  rep.selected_capacity = hd_capacity(current, opts.capacity).value;
  rep.bound = guarantee_bound(n, k, Strategy::kIterative);
  finish(rep);
  return rep;
}

BestSubnetwork best_subnetwork(const DiamondNetwork& net, int k, const SelectionOptions& opts) {
  check_k(net, k);
  const int n = net.size();
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  BestSubnetwork best;
  best.value = -std::numeric_limits<double>::infinity();
  do {
    const RelaySet keep = mask_of(idx);
    const double v = capacity_of(net, keep, opts);
    // Strictly better only, so the lexicographically first optimum is kept.
    if (v > best.value + 1e-12 || (std::isinf(v) && !std::isinf(best.value))) {
      best = {keep, v};
    }
  } while (next_combination(idx, n));
  return best;
}

SelectionReport select_k_exhaustive(const DiamondNetwork& net, int k,
                                    const SelectionOptions& opts) {
  check_k(net, k);
  const int n = net.size();
  if (n > opts.exhaustive_max_relays) {
    throw_guard("exhaustive selection supports at most " +
                std::to_string(opts.exhaustive_max_relays) + " relays, got " + std::to_string(n));
  }
  const BestSubnetwork best = best_subnetwork(net, k, opts);

  SelectionReport rep;
  rep.strategy = Strategy::kExhaustive;
  rep.k = k;
  rep.selected = labels_of(net, best.relays);
  rep.value_kind = ValueKind::kCapacity;
  rep.full_value = hd_capacity(net, opts.capacity).value;
  rep.value = best.value;
  rep.bound = guarantee_bound(n, k, Strategy::kExhaustive);
  finish(rep);
  return rep;
}

double guarantee_bound(int n, int k, Strategy strategy) {
  if (n < 1 || k < 1 || k > n) throw_invalid("guarantee_bound needs 1 <= k <= N");
  const double nd = n;
  const double kd = k;
  switch (strategy) {
    case Strategy::kWorstDrop:
      return std::ldexp(1.0, -(n - k));
    case Strategy::kScheduleReuse:
    case Strategy::kIterative:
      return kd / nd;
    case Strategy::kExhaustive:
      if (k == n) return 1.0;
      if (k == 1) return std::max(1.0 / nd, 0.25);
      return std::max(kd / nd, 0.5);
  }
  return 0.0;
}

}  // namespace hdnet
