#include "hdnet/network.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "hdnet/error.hpp"

namespace hdnet {

LinkCapacity LinkCapacity::finite(double bits) {
  if (!std::isfinite(bits) || bits < 0.0) {
    throw_invalid("link capacity must be finite and nonnegative");
  }
  return LinkCapacity(bits);
}

std::string to_string(const LinkCapacity& c) {
  if (c.is_unbounded()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << c.value();
  return os.str();
}

std::uint32_t parse_mask_bits(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxRelays)) {
    throw_invalid("mask string must have 1.." + std::to_string(kMaxRelays) + " characters");
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= 1u << i;
    } else if (text[i] != '0') {
      throw_invalid("mask string may only contain '0' and '1': " + std::string(text));
    }
  }
  return bits;
}

RelaySet relay_set(std::span<const int> indices, int n) {
  RelaySet set;
  for (int idx : indices) {
    if (idx < 1 || idx > n) {
      throw_invalid("relay index " + std::to_string(idx) + " outside [1:" + std::to_string(n) + "]");
    }
    if (set.test(idx - 1)) throw_invalid("duplicate relay index " + std::to_string(idx));
    set = set.with(idx - 1);
  }
  return set;
}

std::vector<int> relay_indices(RelaySet set) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (set.test(i)) out.push_back(i + 1);
  }
  return out;
}

DiamondNetwork::DiamondNetwork(std::vector<LinkCapacity> uplinks,
                               std::vector<LinkCapacity> downlinks, std::vector<int> labels,
                               std::string name)
    : uplinks_(std::move(uplinks)),
      downlinks_(std::move(downlinks)),
      labels_(std::move(labels)),
      name_(std::move(name)) {
  if (uplinks_.empty()) throw_invalid("a diamond network needs at least one relay");
  if (uplinks_.size() != downlinks_.size()) {
    throw_invalid("uplink and downlink vectors differ in length");
  }
  if (uplinks_.size() > static_cast<std::size_t>(kMaxRelays)) {
    throw_invalid("at most " + std::to_string(kMaxRelays) + " relays are supported");
  }
  if (!labels_.empty()) {
    if (labels_.size() != uplinks_.size()) throw_invalid("labels must have one entry per relay");
    std::set<int> seen;
    for (int l : labels_) {
      if (l < 1) throw_invalid("relay labels are 1-based");
      if (!seen.insert(l).second) throw_invalid("relay labels must be distinct");
    }
  }
}

DiamondNetwork DiamondNetwork::from_values(std::span<const double> uplinks,
                                           std::span<const double> downlinks) {
  std::vector<LinkCapacity> l;
  std::vector<LinkCapacity> r;
  for (double v : uplinks) l.push_back(LinkCapacity::finite(v));
  for (double v : downlinks) r.push_back(LinkCapacity::finite(v));
  return DiamondNetwork(std::move(l), std::move(r));
}

int DiamondNetwork::label(int pos) const {
  if (pos < 0 || pos >= size()) throw_invalid("relay position out of range");
  return labels_.empty() ? pos + 1 : labels_[static_cast<std::size_t>(pos)];
}

bool DiamondNetwork::has_unbounded() const {
  for (int i = 0; i < size(); ++i) {
    if (uplink(i).is_unbounded() || downlink(i).is_unbounded()) return true;
  }
  return false;
}

double DiamondNetwork::finite_sum() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (!uplink(i).is_unbounded()) s += uplink(i).value();
    if (!downlink(i).is_unbounded()) s += downlink(i).value();
  }
  return s;
}

Schedule::Schedule(int n, std::map<std::uint32_t, double> probs) : n_(n) {
  if (n < 1 || n > kMaxRelays) throw_invalid("schedule relay count out of range");
  const std::uint32_t limit = StateMask::full(n).bits;
  double total = 0.0;
  for (const auto& [state, p] : probs) {
    if (state > limit) throw_invalid("schedule state has bits beyond the relay count");
    if (!std::isfinite(p) || p < 0.0) throw_invalid("schedule probabilities must be nonnegative");
    if (p > 0.0) {
      probs_.emplace(state, p);
      total += p;
    }
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw_invalid("schedule probabilities must sum to 1");
  }
}

Schedule Schedule::from_dense(int n, std::span<const double> probs) {
  if (n < 1 || n > 24) throw_invalid("dense schedules support 1..24 relays");
  if (probs.size() != (std::size_t{1} << n)) throw_invalid("dense schedule must have 2^n entries");
  std::map<std::uint32_t, double> m;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (probs[s] != 0.0) m.emplace(static_cast<std::uint32_t>(s), probs[s]);
  }
  return Schedule(n, std::move(m));
}

Schedule Schedule::point(int n, StateMask state) {
  return Schedule(n, {{state.bits, 1.0}});
}

double Schedule::probability(StateMask s) const {
  auto it = probs_.find(s.bits);
  return it == probs_.end() ? 0.0 : it->second;
}

std::vector<double> Schedule::dense() const {
  if (n_ > 24) throw_invalid("dense schedules support 1..24 relays");
  std::vector<double> out(std::size_t{1} << n_, 0.0);
  for (const auto& [s, p] : probs_) out[s] = p;
  return out;
}

bool approx_equal(const Schedule& a, const Schedule& b, double tol) {
  if (a.size() != b.size()) return false;
  std::set<std::uint32_t> states;
  for (const auto& [s, p] : a.entries()) states.insert(s);
  for (const auto& [s, p] : b.entries()) states.insert(s);
  for (std::uint32_t s : states) {
    if (std::abs(a.probability(StateMask{s}) - b.probability(StateMask{s})) > tol) return false;
  }
  return true;
}

}  // namespace hdnet
