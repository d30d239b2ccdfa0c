#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "hdnet/error.hpp"
#include "hdnet/model.hpp"
#include "hdnet/verify.hpp"

using namespace hdnet;

TEST(Verify, EverySuitePassesSmall) {
  VerifyOptions opts;
  opts.trials = 10;
  opts.seed = 3;
  for (const auto& name : verify_suite_names()) {
    const auto rep = run_verify_suite(name, opts);
    EXPECT_TRUE(rep.ok()) << name << ": " << rep.failures.size() << " failures";
    EXPECT_GT(rep.instances, 0) << name;
    EXPECT_EQ(rep.suite, name);
  }
}

TEST(Verify, SuiteListIsComplete) {
  EXPECT_EQ(verify_suite_names().size(), 9u);
}

TEST(Verify, UnknownSuite) {
  EXPECT_THROW(run_verify_suite("nope"), Error);
}

TEST(Verify, DeterministicForSeed) {
  VerifyOptions opts;
  opts.trials = 5;
  opts.seed = 11;
  const auto a = run_verify_suite("guarantees", opts);
  const auto b = run_verify_suite("guarantees", opts);
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_EQ(a.passes, b.passes);
}

TEST(Sandwich, CertifiesWorstCaseBeyondLpRange) {
  for (int n : {11, 14, 18}) {
    const auto s = two_phase_sandwich(gen_worst_case(n));
    EXPECT_TRUE(s.certifies(1.0)) << n << ": " << s.lower << " " << s.upper;
  }
  // A random network is not certified at an arbitrary value.
  const auto r = two_phase_sandwich(gen_random(4, 1));
  EXPECT_FALSE(r.certifies(r.upper + 1.0));
}

TEST(Sweep, WorstCaseFractions) {
  SweepOptions opts;
  opts.from = 2;
  opts.to = 7;
  const auto rows = run_sweep(opts);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.full_value, 1.0, 1e-9);
    EXPECT_NEAR(row.fraction, (row.n - 1.0) / row.n, 1e-9);
  }
  const auto csv = sweep_to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "N,C_full,best_value,fraction");
  int count = 0;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 6);
}

TEST(Sweep, Theorem3TrendsTowardQuarter) {
  SweepOptions opts;
  opts.family = SweepFamily::kTheorem3;
  opts.from = 1;
  opts.to = 3;
  opts.k = 1;
  const auto rows = run_sweep(opts);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double t = static_cast<double>(i + 1);
    EXPECT_EQ(rows[i].n, static_cast<int>(4 * t - 2));
    EXPECT_NEAR(rows[i].fraction, t / (4 * t - 2), 1e-9);
    if (i > 0) {
      EXPECT_LT(rows[i].fraction, rows[i - 1].fraction);
    }
  }
}

TEST(Sweep, ParseFamily) {
  EXPECT_EQ(parse_sweep_family("half-tight"), SweepFamily::kHalfTight);
  EXPECT_THROW(parse_sweep_family("mesh"), Error);
}
