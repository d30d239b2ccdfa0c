#include "hdnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hdnet/error.hpp"

namespace hdnet {

DiamondNetwork links_from_power_gains(std::span<const double> source_power,
                                      std::span<const double> dest_power) {
  if (source_power.empty() || source_power.size() != dest_power.size()) {
    throw_invalid("gain vectors must have equal positive length");
  }
  std::vector<LinkCapacity> l;
  std::vector<LinkCapacity> r;
  for (double g : source_power) {
    if (!(g >= 0.0)) throw_invalid("power gains must be nonnegative");
    l.push_back(LinkCapacity::finite(std::log2(1.0 + g)));
  }
  for (double g : dest_power) {
    if (!(g >= 0.0)) throw_invalid("power gains must be nonnegative");
    r.push_back(LinkCapacity::finite(std::log2(1.0 + g)));
  }
  return DiamondNetwork(std::move(l), std::move(r));
}

DiamondNetwork links_from_gains(std::span<const std::complex<double>> source_gains,
                                std::span<const std::complex<double>> dest_gains) {
  std::vector<double> ps;
  std::vector<double> pd;
  for (auto h : source_gains) ps.push_back(std::norm(h));
  for (auto h : dest_gains) pd.push_back(std::norm(h));
  return links_from_power_gains(ps, pd);
}

DiamondNetwork subnetwork(const DiamondNetwork& net, RelaySet keep) {
  const int n = net.size();
  if (keep.empty()) throw_invalid("subnetwork needs a nonempty relay set");
  if ((keep.bits & ~RelaySet::full(n).bits) != 0) {
    throw_invalid("subnetwork relay index out of range");
  }
  std::vector<LinkCapacity> l;
  std::vector<LinkCapacity> r;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    if (!keep.test(i)) continue;
    l.push_back(net.uplink(i));
    r.push_back(net.downlink(i));
    labels.push_back(net.label(i));
  }
  return DiamondNetwork(std::move(l), std::move(r), std::move(labels), net.name());
}

StateMask restrict_state(StateMask full, RelaySet keep) {
  std::uint32_t out = 0;
  int k = 0;
  for (int i = 0; i < 32; ++i) {
    if (!keep.test(i)) continue;
    if (full.test(i)) out |= 1u << k;
    ++k;
  }
  return StateMask{out};
}

Schedule derive_natural_schedule(const Schedule& sched, RelaySet keep) {
  const int n = sched.size();
  if (keep.empty()) throw_invalid("natural schedule needs a nonempty relay set");
  if ((keep.bits & ~RelaySet::full(n).bits) != 0) {
    throw_invalid("natural schedule relay index out of range");
  }
  std::map<std::uint32_t, double> sub;
  for (const auto& [s, p] : sched.entries()) {
    sub[restrict_state(StateMask{s}, keep).bits] += p;
  }
  return Schedule(keep.count(), std::move(sub));
}

DiamondNetwork gen_worst_case(int n, LinkCapacity big_l) {
  if (n < 2) throw_invalid("worst-case network needs N >= 2");
  const int half = n / 2;
  std::vector<LinkCapacity> l(static_cast<std::size_t>(n));
  std::vector<LinkCapacity> r(static_cast<std::size_t>(n));
  const double nn = n;
  for (int i = 1; i <= half; ++i) {
    const auto up = LinkCapacity::finite(2.0 * i / nn);
    const auto down = LinkCapacity::finite((nn - 2.0 * i + 2.0) / nn);
    for (int pos : {i - 1, half + i - 1}) {
      l[static_cast<std::size_t>(pos)] = up;
      r[static_cast<std::size_t>(pos)] = down;
    }
  }
  if (n % 2 == 1) {
    l.back() = big_l;
    r.back() = LinkCapacity::finite(1.0 / nn);
  }
  return DiamondNetwork(std::move(l), std::move(r), {}, "worst-case-" + std::to_string(n));
}

DiamondNetwork gen_half_tight(int n, LinkCapacity big_l) {
  if (n < 2) throw_invalid("half-tight network needs N >= 2");
  std::vector<LinkCapacity> l(static_cast<std::size_t>(n), LinkCapacity::finite(0.5));
  std::vector<LinkCapacity> r(static_cast<std::size_t>(n), big_l);
  l.back() = big_l;
  r.back() = LinkCapacity::finite(0.5);
  return DiamondNetwork(std::move(l), std::move(r), {}, "half-tight-" + std::to_string(n));
}

Schedule gen_two_phase_schedule(int n) {
  if (n < 2) throw_invalid("two-phase schedule needs N >= 2");
  const int half = n / 2;
  // First state: relays 1..half listen, relays half+1..2*half transmit.
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  for (int i = 0; i < half; ++i) {
    second |= 1u << i;
    first |= 1u << (half + i);
  }
  if (n % 2 == 1) {
    first |= 1u << (n - 1);
    second |= 1u << (n - 1);
  }
  return Schedule(n, {{first, 0.5}, {second, 0.5}});
}

DiamondNetwork gen_random(int n, std::uint64_t seed, CapacityRange range) {
  if (n < 1 || n > kMaxRelays) throw_invalid("random network relay count out of range");
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo < 0.0 ||
      !(range.lo < range.hi)) {
    throw_invalid("capacity range must satisfy 0 <= lo < hi < inf");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(range.lo, range.hi);
  std::vector<LinkCapacity> l;
  std::vector<LinkCapacity> r;
  for (int i = 0; i < n; ++i) l.push_back(LinkCapacity::finite(dist(rng)));
  for (int i = 0; i < n; ++i) r.push_back(LinkCapacity::finite(dist(rng)));
  return DiamondNetwork(std::move(l), std::move(r));
}

DiamondNetwork gen_random_dyadic(int n, std::uint64_t seed, int max_numerator, int denominator) {
  if (n < 1 || n > kMaxRelays) throw_invalid("random network relay count out of range");
  if (max_numerator < 1 || denominator < 1) throw_invalid("invalid dyadic grid");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, max_numerator);
  std::vector<LinkCapacity> l;
  std::vector<LinkCapacity> r;
  for (int i = 0; i < n; ++i) {
    l.push_back(LinkCapacity::finite(static_cast<double>(dist(rng)) / denominator));
  }
  for (int i = 0; i < n; ++i) {
    r.push_back(LinkCapacity::finite(static_cast<double>(dist(rng)) / denominator));
  }
  return DiamondNetwork(std::move(l), std::move(r));
}

Schedule gen_random_schedule(int n, std::uint64_t seed, int support) {
  if (n < 1 || n > 20) throw_invalid("random schedules support 1..20 relays");
  const std::uint32_t states = 1u << n;
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> chosen(states);
  std::iota(chosen.begin(), chosen.end(), 0u);
  if (support > 0 && static_cast<std::uint32_t>(support) < states) {
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(static_cast<std::size_t>(support));
  }
  // Exponential weights give a uniform point on the simplex.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    w.push_back(expo(rng) + 1e-12);
    total += w.back();
  }
  std::map<std::uint32_t, double> m;
  for (std::size_t i = 0; i < chosen.size(); ++i) m[chosen[i]] = w[i] / total;
  return Schedule(n, std::move(m));
}

}  // namespace hdnet
