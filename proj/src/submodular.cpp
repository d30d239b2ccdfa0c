#include "hdnet/submodular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hdnet/error.hpp"

namespace hdnet {

namespace {

double max_link(const std::vector<LinkCapacity>& links, SetMask s) {
  double m = 0.0;
  while (s != 0) {
    const int i = std::countr_zero(s);
    m = std::max(m, links[static_cast<std::size_t>(i)].value());
    s &= s - 1;
  }
  return m;
}

void validate_cuts(int n, std::span<const SetMask> cuts) {
  if (n < 2 || n > kMaxRelays) throw_invalid("cut family needs 2..30 relays");
  if (cuts.size() != static_cast<std::size_t>(n)) throw_invalid("need exactly one cut per relay");
  const SetMask full = CutMask::full(n).bits;
  for (int i = 0; i < n; ++i) {
    const SetMask c = cuts[static_cast<std::size_t>(i)];
    if ((c & ~full) != 0) throw_invalid("cut contains a relay outside [1:n]");
    if ((c >> i) & 1u) {
      throw_invalid("cut of the subnetwork without relay " + std::to_string(i + 1) +
                    " contains that relay");
    }
  }
}

// Inequality comparisons treat inf >= inf as satisfied.
bool at_least(double lhs, double rhs, double tol) {
  if (std::isinf(lhs) && lhs > 0) return true;
  return lhs >= rhs - tol;
}

}  // namespace

SetFamily::SetFamily(int ground, std::vector<SetMask> s) : ground_size(ground), sets(std::move(s)) {
  if (ground_size < 1 || ground_size > kMaxGroundSize) {
    throw_invalid("ground set size must be in [1:30]");
  }
  const SetMask g = this->ground();
  for (SetMask a : sets) {
    if ((a & ~g) != 0) throw_invalid("family member is not a subset of the ground set");
  }
}

SetFunction max_element_function() {
  return SetFunction(
      [](SetMask s) { return s == 0 ? 0.0 : static_cast<double>(32 - std::countl_zero(s)); },
      true);
}

SetFunction weighted_max_function(std::vector<double> weights) {
  return SetFunction(
      [w = std::move(weights)](SetMask s) {
        double m = 0.0;
        while (s != 0) {
          const int i = std::countr_zero(s);
          if (static_cast<std::size_t>(i) >= w.size()) throw_invalid("element without weight");
          m = std::max(m, w[static_cast<std::size_t>(i)]);
          s &= s - 1;
        }
        return m;
      },
      true);
}

SubmodularCheck is_submodular(const SetFunction& f, int ground_size, double tol) {
  if (ground_size < 0 || ground_size > kExhaustiveGroundSize) {
    throw_guard("exhaustive submodularity check supports ground sets up to " +
                std::to_string(kExhaustiveGroundSize));
  }
  const SetMask count = SetMask{1} << ground_size;
  std::vector<double> values(count);
  for (SetMask s = 0; s < count; ++s) values[s] = f(s);
  for (SetMask a = 0; a < count; ++a) {
    for (SetMask b = a + 1; b < count; ++b) {
      if (values[a] + values[b] < values[a | b] + values[a & b] - tol) {
        return {false, std::make_pair(a, b)};
      }
    }
  }
  return {};
}

std::vector<SetMask> threshold_sets(const SetFamily& fam) {
  const std::size_t n = fam.sets.size();
  std::vector<SetMask> out(n, 0);
  for (int x = 0; x < fam.ground_size; ++x) {
    std::size_t mult = 0;
    for (SetMask a : fam.sets) mult += (a >> x) & 1u;
    for (std::size_t j = 0; j < mult; ++j) out[j] |= SetMask{1} << x;
  }
  return out;
}

SetMask union_of_intersections(std::span<const SetMask> sets, int k, SetMask ground,
                               SetMask with) {
  const std::size_t n = sets.size();
  if (n > 20) throw_guard("index-set enumeration supports at most 20 sets");
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  SetMask out = 0;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    if (std::popcount(idx) != k) continue;
    SetMask inter = ground & with;
    for (std::size_t i = 0; i < n; ++i) {
      if ((idx >> i) & 1u) inter &= sets[i];
    }
    out |= inter;
  }
  return out;
}

InequalityReport check_lemma2(const SetFunction& f, const SetFamily& fam, double tol) {
  InequalityReport rep;
  for (SetMask a : fam.sets) rep.lhs += f(a);
  for (SetMask e : threshold_sets(fam)) rep.rhs += f(e);
  rep.holds = at_least(rep.lhs, rep.rhs, tol);
  return rep;
}

InequalityReport check_property1(const SetFunction& f, const SetFamily& fam, SetMask extra, int k,
                                 double tol) {
  const int n = static_cast<int>(fam.sets.size());
  if (n < 1) throw_invalid("property check needs at least one set");
  if (k < 0 || k >= n) throw_invalid("property check needs 0 <= k < n");
  const SetMask g = fam.ground();
  if ((extra & ~g) != 0) throw_invalid("extra set is not a subset of the ground set");

  std::vector<SetMask> extended = fam.sets;
  extended.push_back(extra);

  InequalityReport rep;
  rep.lhs = f(union_of_intersections(fam.sets, k, g, extra)) +
            f(union_of_intersections(fam.sets, k + 1, g, g));
  rep.rhs = f(union_of_intersections(extended, k + 1, g, g)) +
            f(union_of_intersections(fam.sets, k + 1, g, extra));
  rep.holds = at_least(rep.lhs, rep.rhs, tol);
  return rep;
}

std::vector<SetMask> construct_full_cuts(int n, std::span<const SetMask> cuts) {
  validate_cuts(n, cuts);
  const SetFamily fam(n, std::vector<SetMask>(cuts.begin(), cuts.end()));
  auto e = threshold_sets(fam);
  // No relay belongs to its own cut, so E_n is always empty and is dropped.
  e.pop_back();
  return e;
}

InequalityReport check_lemma3(const DiamondNetwork& net, std::span<const SetMask> cuts,
                              double tol) {
  const int n = net.size();
  validate_cuts(n, cuts);
  const SetMask full = CutMask::full(n).bits;
  InequalityReport rep;
  for (int j = 0; j < n; ++j) {
    const SetMask a = cuts[static_cast<std::size_t>(j)];
    const SetMask rest = full & ~(SetMask{1} << j) & ~a;
    rep.lhs += max_link(net.uplinks(), a) + max_link(net.downlinks(), rest);
  }
  for (SetMask af : construct_full_cuts(n, cuts)) {
    rep.rhs += max_link(net.uplinks(), af) + max_link(net.downlinks(), full & ~af);
  }
  rep.holds = at_least(rep.lhs, rep.rhs, tol);
  return rep;
}

bool complement_duality_check(int n, std::span<const SetMask> cuts) {
  validate_cuts(n, cuts);
  const SetMask full = CutMask::full(n).bits;
  std::vector<SetMask> complements;
  for (int i = 0; i < n; ++i) {
    complements.push_back(full & ~(SetMask{1} << i) & ~cuts[static_cast<std::size_t>(i)]);
  }
  const auto e = threshold_sets(SetFamily(n, std::vector<SetMask>(cuts.begin(), cuts.end())));
  const auto f = threshold_sets(SetFamily(n, complements));
  for (int j = 1; j <= n - 1; ++j) {
    if ((full & ~e[static_cast<std::size_t>(j - 1)]) != f[static_cast<std::size_t>(n - j - 1)]) {
      return false;
    }
  }
  return true;
}

}  // namespace hdnet
