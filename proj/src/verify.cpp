#include "hdnet/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "hdnet/error.hpp"
#include "hdnet/model.hpp"
#include "hdnet/selection.hpp"
#include "hdnet/submodular.hpp"

namespace hdnet {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool near(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

// One instance of a suite; only the first failing check is reported.
class Case {
 public:
  explicit Case(std::string id) : id_(std::move(id)) {}

  void expect(bool ok, const std::string& what, const std::string& expected,
              const std::string& got) {
    if (!ok && !failure_) failure_ = VerifyFailure{id_ + " " + what, expected, got};
  }
  void expect_at_least(double got, double bound, const std::string& what,
                       double tol = kVerifyTolerance) {
    const bool ok = (std::isinf(got) && got > 0) || got >= bound - tol;
    expect(ok, what, ">= " + num(bound), num(got));
  }
  void expect_near(double got, double want, const std::string& what,
                   double tol = kRegressionTolerance) {
    expect(near(got, want, tol), what, num(want), num(got));
  }

  const std::string& id() const { return id_; }
  const std::optional<VerifyFailure>& failure() const { return failure_; }

 private:
  std::string id_;
  std::optional<VerifyFailure> failure_;
};

class Suite {
 public:
  explicit Suite(std::string name) { report_.suite = std::move(name); }

  // Runs `body` as one instance; exceptions count as failures.
  void run(const std::string& id, const std::function<void(Case&)>& body) {
    Case c(id);
    try {
      body(c);
    } catch (const Error& e) {
      // A resource guard is a configuration problem, not a failed instance.
      if (e.kind() == ErrorKind::kGuardExceeded) throw;
      c.expect(false, "threw", "no exception", e.what());
    } catch (const std::exception& e) {
      c.expect(false, "threw", "no exception", e.what());
    }
    ++report_.instances;
    if (c.failure()) {
      report_.failures.push_back(*c.failure());
    } else {
      ++report_.passes;
    }
  }

  VerifySuiteReport finish(std::chrono::steady_clock::time_point start) {
    report_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(report_);
  }

 private:
  VerifySuiteReport report_;
};

int n_max_or(const VerifyOptions& opts, int fallback) {
  return opts.n_max > 0 ? opts.n_max : fallback;
}

int draw_n(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng);
}

std::string trial_id(int t, int n) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "trial=%04d n=%d", t, n);
  return buf;
}

std::string mask_id(RelaySet s, int n) { return to_string(s, n); }

RelaySet without(int n, int pos) { return RelaySet{RelaySet::full(n).bits & ~(1u << pos)}; }

double rate_of(const DiamondNetwork& net, const Schedule& sched, RelaySet keep) {
  return fixed_schedule_rate(subnetwork(net, keep), derive_natural_schedule(sched, keep)).value;
}

SetMask random_subset(std::mt19937_64& rng, SetMask universe) {
  return static_cast<SetMask>(rng()) & universe;
}

// Random cut family: cuts[i] is a subset of [1:n] \ {i+1}.
std::vector<SetMask> random_cuts(std::mt19937_64& rng, int n) {
  std::vector<SetMask> cuts;
  for (int i = 0; i < n; ++i) cuts.push_back(random_subset(rng, without(n, i).bits));
  return cuts;
}

double full_capacity(const DiamondNetwork& net, const CapacityOptions& opts, bool sandwich_ok) {
  if (!sandwich_ok || net.size() <= kSandwichAbove) return hd_capacity(net, opts).value;
  const auto s = two_phase_sandwich(net);
  if (!near(s.lower, s.upper, kRegressionTolerance)) {
    throw Error(ErrorKind::kGuardExceeded,
                "full LP skipped and the two-phase/FD sandwich is not tight (" + num(s.lower) +
                    " < " + num(s.upper) + ")");
  }
  return s.upper;
}

// ---------------------------------------------------------------------------

VerifySuiteReport suite_partition(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("partition");
  std::mt19937_64 rng(opts.seed);
  const int n_max = n_max_or(opts, 5);
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    const auto sched = gen_random_schedule(n, rng());
    suite.run(trial_id(t, n), [&](Case& c) {
      const double rate_full = fixed_schedule_rate(net, sched).value;
      const RelaySet full = RelaySet::full(n);
      std::vector<double> cap(std::size_t{1} << n, 0.0);
      for (std::uint32_t k = 1; k < full.bits; ++k) {
        cap[k] = hd_capacity(subnetwork(net, RelaySet{k}), opts.capacity).value;
      }
      const double cap_full = hd_capacity(net, opts.capacity).value;
      for (std::uint32_t k = 1; k < full.bits; ++k) {
        const RelaySet keep{k};
        const RelaySet rest = keep.complement(n);
        c.expect_at_least(rate_of(net, sched, keep) + rate_of(net, sched, rest), rate_full,
                          "rate partition K=" + mask_id(keep, n));
        c.expect_at_least(cap[k] + cap[rest.bits], cap_full,
                          "capacity partition K=" + mask_id(keep, n));
      }
    });
  }
  return suite.finish(start);
}

VerifySuiteReport suite_submodular(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("submodular");
  suite.run("worked-example", [&](Case& c) {
    const auto f = max_element_function();
    // {1,2,5,7}, {4,5}, {2,4,5,6}
    const SetFamily fam(7, {0b1010011, 0b0011000, 0b0111010});
    const auto rep = check_lemma2(f, fam);
    c.expect_near(rep.lhs, 18.0, "lemma2 lhs");
    c.expect_near(rep.rhs, 17.0, "lemma2 rhs");
    c.expect(is_submodular(f, 7).holds, "max is submodular", "true", "false");
    const auto p1 = check_property1(f, fam, 0b0001001, 1);
    c.expect(p1.holds, "property1 extra={1,4} k=1", ">= " + num(p1.rhs), num(p1.lhs));
  });

  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    const int m = draw_n(rng, 1, 8);
    const int sets = draw_n(rng, 1, 5);
    const SetMask ground = SetMask((1u << m) - 1);
    std::vector<SetMask> family;
    for (int i = 0; i < sets; ++i) family.push_back(random_subset(rng, ground));
    const SetMask extra = random_subset(rng, ground);
    std::vector<double> weights;
    std::uniform_real_distribution<double> w(0.0, 1.0);
    for (int i = 0; i < m; ++i) weights.push_back(w(rng));
    suite.run(trial_id(t, sets) + " m=" + std::to_string(m), [&](Case& c) {
      const SetFamily fam(m, family);
      const auto f = weighted_max_function(weights);
      c.expect(is_submodular(f, m).holds, "weighted max is submodular", "true", "false");

      const auto e = threshold_sets(fam);
      int total_sets = 0;
      int total_thresholds = 0;
      for (SetMask a : family) total_sets += std::popcount(a);
      for (std::size_t j = 0; j < e.size(); ++j) {
        total_thresholds += std::popcount(e[j]);
        if (j > 0) c.expect((e[j] & ~e[j - 1]) == 0, "thresholds nested", "subset", "not subset");
      }
      c.expect(total_sets == total_thresholds, "counting identity", std::to_string(total_sets),
               std::to_string(total_thresholds));

      const auto l2 = check_lemma2(f, fam);
      c.expect(l2.holds, "lemma2", ">= " + num(l2.rhs), num(l2.lhs));
      for (int k = 0; k < sets; ++k) {
        const auto p1 = check_property1(f, fam, extra, k);
        c.expect(p1.holds, "property1 k=" + std::to_string(k), ">= " + num(p1.rhs), num(p1.lhs));
      }
    });
  }
  return suite.finish(start);
}

void lemma3_case(Case& c, const DiamondNetwork& net, const std::vector<SetMask>& cuts) {
  const int n = net.size();
  const auto rep = check_lemma3(net, cuts);
  c.expect(rep.holds, "lemma3", ">= " + num(rep.rhs), num(rep.lhs));
  c.expect(complement_duality_check(n, cuts), "complement duality", "true", "false");
  c.expect(construct_full_cuts(n, cuts).size() == static_cast<std::size_t>(n - 1),
           "construction size", std::to_string(n - 1), "other");
}

VerifySuiteReport suite_lemma3(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("lemma3");
  std::mt19937_64 rng(opts.seed);

  const auto example_net = gen_random(3, rng());
  suite.run("worked-example", [&](Case& c) {
    // A_1 = {}, A_2 = {3}, A_3 = {1,2}
    const std::vector<SetMask> cuts{0b000, 0b100, 0b011};
    lemma3_case(c, example_net, cuts);
    const auto full = construct_full_cuts(3, cuts);
    c.expect(full == std::vector<SetMask>{0b111, 0b000}, "construction", "111,000",
             to_string(CutMask{full[0]}, 3) + "," + to_string(CutMask{full[1]}, 3));
    double max_l = 0.0;
    double max_r = 0.0;
    for (int i = 0; i < 3; ++i) {
      max_l = std::max(max_l, example_net.uplink(i).value());
      max_r = std::max(max_r, example_net.downlink(i).value());
    }
    c.expect_near(check_lemma3(example_net, cuts).rhs, max_l + max_r, "rhs = max l + max r");
  });

  // All 4^3 families of a 3-relay network.
  const auto net3 = gen_random(3, rng());
  for (int code = 0; code < 64; ++code) {
    std::vector<SetMask> cuts;
    for (int i = 0; i < 3; ++i) {
      const int choice = (code >> (2 * i)) & 3;
      const SetMask others = without(3, i).bits;
      // Enumerate the four subsets of `others` by their rank.
      SetMask sub = 0;
      int bit = 0;
      for (int x = 0; x < 3; ++x) {
        if ((others >> x) & 1u) {
          if ((choice >> bit) & 1) sub |= SetMask{1} << x;
          ++bit;
        }
      }
      cuts.push_back(sub);
    }
    suite.run("exhaustive family=" + std::to_string(code),
              [&](Case& c) { lemma3_case(c, net3, cuts); });
  }

  const int n_max = n_max_or(opts, 6);
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    const auto other = gen_random(n, rng());
    const auto cuts = random_cuts(rng, n);
    suite.run(trial_id(t, n), [&](Case& c) {
      lemma3_case(c, net, cuts);
      lemma3_case(c, other, cuts);
    });
  }
  return suite.finish(start);
}

void expect_report(Case& c, const SelectionReport& rep, const std::string& what) {
  c.expect(rep.meets_bound(), what + " k=" + std::to_string(rep.k), ">= " + num(rep.bound),
           num(rep.fraction));
}

VerifySuiteReport suite_guarantees(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("guarantees");
  std::mt19937_64 rng(opts.seed);
  const int n_max = n_max_or(opts, 6);
  SelectionOptions sel;
  sel.capacity = opts.capacity;
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    suite.run(trial_id(t, n), [&](Case& c) {
      const auto worst = drop_worst(net, n - 1, {}, sel);
      c.expect_at_least(worst.fraction, 0.5, "worst-drop half");
      const auto reuse = select_drop_one_schedule_reuse(net, sel);
      expect_report(c, reuse, "schedule-reuse");
      c.expect_at_least(*reuse.selected_capacity, reuse.value, "reuse capacity >= rate");
      for (int k = 1; k <= n; ++k) {
        expect_report(c, drop_worst(net, k, {}, sel), "worst-drop");
        const auto iter = select_k_iterative(net, k, std::nullopt, sel);
        expect_report(c, iter, "iterative");
        c.expect(iter.rounds_meet_bounds(), "iterative rounds k=" + std::to_string(k),
                 "ratio >= (m-1)/m", "violated");
        const auto best = select_k_exhaustive(net, k, sel);
        expect_report(c, best, "exhaustive");
        c.expect_at_least(best.value, *iter.selected_capacity,
                          "exhaustive >= iterative capacity k=" + std::to_string(k));
        c.expect_at_least(*iter.selected_capacity, iter.value,
                          "iterative capacity >= rate k=" + std::to_string(k));
        if (k == n - 1) {
          c.expect_at_least(best.fraction, static_cast<double>(n - 1) / n, "best (N-1) subset");
        }
      }
    });
  }
  return suite.finish(start);
}

VerifySuiteReport suite_lemma5(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("lemma5");
  std::mt19937_64 rng(opts.seed);
  const int n_max = n_max_or(opts, 6);
  SelectionOptions sel;
  sel.capacity = opts.capacity;
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    const int support = draw_n(rng, 0, 1 << n);
    const auto sched = gen_random_schedule(n, rng(), support);
    suite.run(trial_id(t, n), [&](Case& c) {
      const double rate_full = fixed_schedule_rate(net, sched).value;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rate_of(net, sched, without(n, i));
      c.expect_at_least(sum, (n - 1) * rate_full, "sum of drop-one rates");
      const auto iter = select_k_iterative(net, 1, sched, sel);
      c.expect(iter.rounds_meet_bounds(), "iterative rounds", "ratio >= (m-1)/m", "violated");
    });
  }
  return suite.finish(start);
}

VerifySuiteReport suite_fig2(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("fig2");
  const int n_max = n_max_or(opts, 10);
  SelectionOptions sel;
  sel.capacity = opts.capacity;
  for (int n = 2; n <= n_max; ++n) {
    suite.run("N=" + std::to_string(n), [&](Case& c) {
      const auto net = gen_worst_case(n);
      const double full = full_capacity(net, opts.capacity, true);
      c.expect_near(full, 1.0, "full capacity");
      const double want = static_cast<double>(n - 1) / n;
      double best = 0.0;
      for (int i = 0; i < n; ++i) {
        const double v = hd_capacity(subnetwork(net, without(n, i)), opts.capacity).value;
        c.expect_near(v / full, want, "drop relay " + std::to_string(i + 1));
        best = std::max(best, v);
      }
      c.expect_near(best / full, want, "best (N-1) fraction");
      if (n <= kSandwichAbove) {
        c.expect_near(select_drop_one_schedule_reuse(net, sel).fraction, want,
                      "schedule-reuse fraction");
      }
    });
  }
  return suite.finish(start);
}

VerifySuiteReport suite_theorem3(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("theorem3");
  const int n_max = n_max_or(opts, 10);
  const int t_max = std::max(1, (n_max + 2) / 4);
  SelectionOptions sel;
  sel.capacity = opts.capacity;
  std::vector<std::pair<double, double>> fractions;
  for (int t = 1; t <= t_max; ++t) {
    const int n = 4 * t - 2;
    suite.run("t=" + std::to_string(t) + " N=" + std::to_string(n), [&](Case& c) {
      const auto net = gen_worst_case(n);
      const double full = full_capacity(net, opts.capacity, true);
      c.expect_near(full, 1.0, "full capacity");
      const double nd = n;
      for (int pos = 0; pos < n; ++pos) {
        const int i = pos % (n / 2) + 1;
        const double closed = 2.0 * i * (nd - 2 * i + 2) / (nd * (nd + 2));
        c.expect_near(single_relay_capacity(net.uplink(pos), net.downlink(pos)), closed,
                      "single capacity relay " + std::to_string(pos + 1));
      }
      const double single = best_subnetwork(net, 1, sel).value / full;
      const double pair = best_subnetwork(net, 2, sel).value / full;
      c.expect_near(single, t / (4.0 * t - 2), "best single fraction");
      c.expect_near(pair, t / (2.0 * t - 1), "best pair fraction");
      fractions.emplace_back(single, pair);
    });
  }
  suite.run("convergence", [&](Case& c) {
    for (std::size_t i = 0; i < fractions.size(); ++i) {
      c.expect(fractions[i].first > 0.25 && fractions[i].second > 0.5, "above limits",
               "> 1/4 and > 1/2", num(fractions[i].first) + ", " + num(fractions[i].second));
      if (i > 0) {
        c.expect(fractions[i].first < fractions[i - 1].first &&
                     fractions[i].second < fractions[i - 1].second,
                 "monotone in t", "decreasing", "not decreasing");
      }
    }
  });
  return suite.finish(start);
}

VerifySuiteReport suite_sparsify(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("sparsify");
  const auto check = [&](Case& c, const DiamondNetwork& net) {
    const double value = hd_capacity(net, opts.capacity).value;
    const auto s = sparsify_schedule(net, value);
    c.expect(s.has_value(), "support search", "found", "not found");
    if (!s) return;
    c.expect(s->support_size() <= static_cast<std::size_t>(net.size() + 1), "support size",
             "<= " + std::to_string(net.size() + 1), std::to_string(s->support_size()));
    c.expect_at_least(fixed_schedule_rate(net, *s).value, value, "rate", kRegressionTolerance);
  };
  suite.run("worst-case N=2", [&](Case& c) { check(c, gen_worst_case(2)); });
  std::mt19937_64 rng(opts.seed);
  const int n_max = std::min(n_max_or(opts, 4), SparsifyOptions{}.max_relays);
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    suite.run(trial_id(t, n), [&](Case& c) { check(c, net); });
  }
  return suite.finish(start);
}

VerifySuiteReport suite_edge_delta(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Suite suite("edge-delta");
  std::mt19937_64 rng(opts.seed);
  const int n_max = n_max_or(opts, 6);
  for (int t = 0; t < opts.trials; ++t) {
    const int n = draw_n(rng, 2, n_max);
    const auto net = gen_random(n, rng());
    suite.run(trial_id(t, n), [&](Case& c) {
      const double full = hd_capacity(net, opts.capacity).value;
      for (int i = 0; i < n; ++i) {
        const double delta = std::min(net.uplink(i).value(), net.downlink(i).value());
        const double sub = hd_capacity(subnetwork(net, without(n, i)), opts.capacity).value;
        c.expect_at_least(sub, full - delta, "drop relay " + std::to_string(i + 1));
      }
    });
  }
  return suite.finish(start);
}

using SuiteFn = VerifySuiteReport (*)(const VerifyOptions&);

const std::map<std::string, SuiteFn, std::less<>>& suites() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"partition", suite_partition}, {"submodular", suite_submodular},
      {"lemma3", suite_lemma3},       {"guarantees", suite_guarantees},
      {"lemma5", suite_lemma5},       {"fig2", suite_fig2},
      {"theorem3", suite_theorem3},   {"sparsify", suite_sparsify},
      {"edge-delta", suite_edge_delta},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"partition", "submodular", "lemma3",
                                              "guarantees", "lemma5",     "fig2",
                                              "theorem3",  "sparsify",   "edge-delta"};
  return names;
}

VerifySuiteReport run_verify_suite(std::string_view suite, const VerifyOptions& opts) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw_invalid("unknown suite '" + std::string(suite) + "'");
  if (opts.trials < 0) throw_invalid("--trials must be non-negative");
  return it->second(opts);
}

CapacitySandwich two_phase_sandwich(const DiamondNetwork& net) {
  return {fixed_schedule_rate(net, gen_two_phase_schedule(net.size())).value,
          fd_capacity_fast(net)};
}

SweepFamily parse_sweep_family(std::string_view text) {
  if (text == "worst-case") return SweepFamily::kWorstCase;
  if (text == "half-tight") return SweepFamily::kHalfTight;
  if (text == "random") return SweepFamily::kRandom;
  if (text == "theorem3") return SweepFamily::kTheorem3;
  throw_invalid("unknown family '" + std::string(text) +
                "' (expected worst-case, half-tight, random or theorem3)");
}

std::vector<SweepRow> run_sweep(const SweepOptions& opts) {
  if (opts.from > opts.to) throw_invalid("empty range");
  if (opts.from < 1) throw_invalid("range must start at 1 or above");
  if (opts.k < 0) throw_invalid("k must be positive");
  SelectionOptions sel;
  sel.capacity = opts.capacity;
  std::vector<SweepRow> rows;
  for (int x = opts.from; x <= opts.to; ++x) {
    int n = x;
    std::optional<DiamondNetwork> net;
    bool sandwich = false;
    switch (opts.family) {
      case SweepFamily::kWorstCase:
        net = gen_worst_case(n);
        sandwich = true;
        break;
      case SweepFamily::kHalfTight: net = gen_half_tight(n); break;
      case SweepFamily::kRandom: net = gen_random(n, opts.seed + static_cast<std::uint64_t>(n)); break;
      case SweepFamily::kTheorem3:
        n = 4 * x - 2;
        net = gen_worst_case(n);
        sandwich = true;
        break;
    }
    const int k = opts.k == 0 ? n - 1 : opts.k;
    if (k < 1 || k > n) {
      throw_invalid("k=" + std::to_string(k) + " is out of range for N=" + std::to_string(n));
    }
    SweepRow row;
    row.n = n;
    row.full_value = full_capacity(*net, opts.capacity, sandwich);
    row.best_value = best_subnetwork(*net, k, sel).value;
    row.fraction = fraction_of(row.best_value, row.full_value);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "N,C_full,best_value,fraction\n";
  for (const auto& r : rows) {
    out << r.n << ',' << num(r.full_value) << ',' << num(r.best_value) << ',' << num(r.fraction)
        << '\n';
  }
  return out.str();
}

}  // namespace hdnet
