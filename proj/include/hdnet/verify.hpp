#pragma once

// Verification suites and parameter sweeps. Each suite runs a battery of
// invariant checks over seeded random instances and/or the constructed
// networks, and reports every failing instance.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hdnet/capacity.hpp"
#include "hdnet/network.hpp"

namespace hdnet {

inline constexpr double kVerifyTolerance = 1e-8;
inline constexpr double kRegressionTolerance = 1e-9;
// Above this size the fig2/theorem3 checks certify the full capacity by the
// two-phase/FD sandwich instead of solving the full LP.
inline constexpr int kSandwichAbove = 10;

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  int n_max = 0;  // 0: suite default
  CapacityOptions capacity;
};

struct VerifyFailure {
  std::string instance;
  std::string expected;
  std::string got;
};

struct VerifySuiteReport {
  std::string suite;
  int instances = 0;
  int passes = 0;
  std::vector<VerifyFailure> failures;
  double wall_seconds = 0.0;

  bool ok() const { return failures.empty() && passes == instances; }
};

const std::vector<std::string>& verify_suite_names();

// Throws kInvalidInput for an unknown suite name.
VerifySuiteReport run_verify_suite(std::string_view suite, const VerifyOptions& opts = {});

struct CapacitySandwich {
  double lower = 0.0;  // rate of the two-phase schedule
  double upper = 0.0;  // full-duplex min cut
  bool certifies(double value, double tol = kRegressionTolerance) const {
    return lower >= value - tol && upper <= value + tol;
  }
};

CapacitySandwich two_phase_sandwich(const DiamondNetwork& net);

enum class SweepFamily { kWorstCase, kHalfTight, kRandom, kTheorem3 };

SweepFamily parse_sweep_family(std::string_view text);

struct SweepOptions {
  SweepFamily family = SweepFamily::kWorstCase;
  // Inclusive range; for the theorem3 family the range is over t with N = 4t-2.
  int from = 2;
  int to = 10;
  int k = 0;  // 0: best (N-1)-relay subnetwork
  std::uint64_t seed = 1;
  CapacityOptions capacity;
};

struct SweepRow {
  int n = 0;
  double full_value = 0.0;
  double best_value = 0.0;
  double fraction = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepOptions& opts);

// Header "N,C_full,best_value,fraction" followed by one row per N.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace hdnet
