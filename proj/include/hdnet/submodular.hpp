#pragma once

// Set families over a small ground set Omega = {1..m} (element x is bit x-1),
// threshold sets, submodularity checks and the value-independent construction
// that maps one cut per (N-1)-relay subnetwork to N-1 cuts of the full network.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hdnet/network.hpp"

namespace hdnet {

using SetMask = std::uint32_t;

inline constexpr int kMaxGroundSize = 30;
inline constexpr int kExhaustiveGroundSize = 12;

struct SetFamily {
  SetFamily(int ground_size, std::vector<SetMask> sets);

  SetMask ground() const { return SetMask((std::uint64_t{1} << ground_size) - 1); }

  int ground_size;
  std::vector<SetMask> sets;  // order matters
};

class SetFunction {
 public:
  using Eval = std::function<double(SetMask)>;

  explicit SetFunction(Eval eval, bool declared_submodular = false)
      : eval_(std::move(eval)), declared_submodular_(declared_submodular) {}

  double operator()(SetMask s) const { return eval_(s); }
  bool declared_submodular() const { return declared_submodular_; }

 private:
  Eval eval_;
  bool declared_submodular_;
};

// f(A) = max_{x in A} x with f(empty) = 0.
SetFunction max_element_function();
// f(A) = max_{x in A} w_x with f(empty) = 0; weights[x-1] belongs to element x.
SetFunction weighted_max_function(std::vector<double> weights);

struct SubmodularCheck {
  bool holds = true;
  std::optional<std::pair<SetMask, SetMask>> counterexample;
};

// Exhaustive check of f(A) + f(B) >= f(A | B) + f(A & B) over all pairs.
SubmodularCheck is_submodular(const SetFunction& f, int ground_size, double tol = 1e-12);

// E_j = elements contained in at least j sets, j = 1..n. Nested, decreasing.
std::vector<SetMask> threshold_sets(const SetFamily& fam);

// Union over index sets I of size k (drawn from `sets`) of (with & A_I), where
// A_I is the intersection of the sets in I and the empty intersection is Omega.
SetMask union_of_intersections(std::span<const SetMask> sets, int k, SetMask ground,
                               SetMask with);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

// sum_i f(A_i) >= sum_j f(E_j).
InequalityReport check_lemma2(const SetFunction& f, const SetFamily& fam, double tol = 1e-9);

// The four-term exchange inequality used to extend the threshold-set bound
// from n to n+1 sets, for 0 <= k < n, with `extra` playing A_{n+1}.
InequalityReport check_property1(const SetFunction& f, const SetFamily& fam, SetMask extra, int k,
                                 double tol = 1e-9);

// `cuts[i]` is a cut of the subnetwork without relay i+1 (relay j is bit j-1)
// and must not contain relay i+1. Returns the n-1 full-network cuts E_1..E_{n-1}.
std::vector<SetMask> construct_full_cuts(int n, std::span<const SetMask> cuts);

// sum_j (max_{A_j} l + max_{([1:N]\{j})\A_j} r) >= sum_j (max_{A_Fj} l + max_{[1:N]\A_Fj} r).
InequalityReport check_lemma3(const DiamondNetwork& net, std::span<const SetMask> cuts,
                              double tol = 1e-9);

// With B_i = ([1:n]\{i}) \ A_i, checks [1:n] \ E_j(A) == E_{n-j}(B) for j = 1..n-1.
bool complement_duality_check(int n, std::span<const SetMask> cuts);

}  // namespace hdnet
