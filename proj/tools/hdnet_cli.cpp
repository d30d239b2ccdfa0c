// hdnet: capacity, relay selection, generators, verification suites and sweeps
// for Gaussian half-duplex diamond networks.
//
// Exit codes: 0 success, 2 input error, 3 resource guard, 4 invariant violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdnet/capacity.hpp"
#include "hdnet/error.hpp"
#include "hdnet/io.hpp"
#include "hdnet/model.hpp"
#include "hdnet/rational.hpp"
#include "hdnet/selection.hpp"
#include "hdnet/verify.hpp"

namespace {

using nlohmann::json;
using namespace hdnet;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitViolation = 4;

json number(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

// "inf" or a non-negative number.
LinkCapacity parse_big_l(const std::string& text) {
  if (text == "inf") return LinkCapacity::unbounded();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw_invalid("--big-l must be \"inf\" or a number, got '" + text + "'");
  }
  if (used != text.size()) throw_invalid("--big-l must be \"inf\" or a number, got '" + text + "'");
  return LinkCapacity::finite(v);
}

DiamondNetwork substitute_big_l(const DiamondNetwork& net, const std::optional<std::string>& big_l) {
  if (!big_l) return net;
  const LinkCapacity sub = parse_big_l(*big_l);
  auto replace = [&](std::vector<LinkCapacity> links) {
    for (auto& c : links) {
      if (c.is_unbounded()) c = sub;
    }
    return links;
  };
  return DiamondNetwork(replace(net.uplinks()), replace(net.downlinks()), net.labels(), net.name());
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw_invalid("cannot write " + path);
  out << text;
}

CapacityOptions capacity_options(bool exact) {
  CapacityOptions opts;
  opts.arithmetic = exact ? Arithmetic::kRational : Arithmetic::kFloat;
  opts.max_relays = lp_guard_from_env();
  return opts;
}

std::string exact_fd_value(const DiamondNetwork& net, CutMask cut) {
  Rational best_l = 0;
  Rational best_r = 0;
  for (int i = 0; i < net.size(); ++i) {
    const auto& link = cut.test(i) ? net.uplink(i) : net.downlink(i);
    if (link.is_unbounded()) return "inf";
    auto& slot = cut.test(i) ? best_l : best_r;
    const Rational v = to_rational(link.value());
    if (v > slot) slot = v;
  }
  return to_string(Rational(best_l + best_r));
}

// ---------------------------------------------------------------------------

struct CapacityArgs {
  std::string network;
  std::string mode = "hd";
  bool exact = false;
  bool emit_schedule = false;
  std::optional<std::string> big_l;
};

int cmd_capacity(const CapacityArgs& a) {
  const auto net = substitute_big_l(load_network_file(a.network), a.big_l);
  json out;
  out["mode"] = a.mode;
  CapacityResult res;
  if (a.mode == "fd") {
    res = fd_capacity(net);
    if (a.exact && !res.tight_cuts.empty()) out["exact"] = exact_fd_value(net, res.tight_cuts.front());
  } else {
    res = hd_capacity(net, capacity_options(a.exact));
    if (a.exact) out["exact"] = res.exact_value;
    if (a.emit_schedule && res.optimal_schedule) {
      out["schedule"] = schedule_to_json(*res.optimal_schedule);
    }
  }
  out["value"] = number(res.value);
  json cuts = json::array();
  for (CutMask c : res.tight_cuts) cuts.push_back(to_string(c, net.size()));
  out["tight_cuts"] = std::move(cuts);
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct SelectArgs {
  std::string network;
  int k = 0;
  std::string strategy = "exhaustive";
  std::vector<int> force_remove;
  std::string schedule;
  std::optional<std::string> big_l;
};

json report_to_json(const SelectionReport& rep) {
  json j;
  j["strategy"] = std::string(to_string(rep.strategy));
  j["selected"] = rep.selected;
  j["k"] = rep.k;
  j["value_kind"] = std::string(to_string(rep.value_kind));
  j["value"] = number(rep.value);
  j["full_value"] = number(rep.full_value);
  j["fraction"] = rep.fraction;
  j["bound"] = rep.bound;
  j["meets_bound"] = rep.meets_bound();
  if (rep.selected_capacity) j["selected_capacity"] = number(*rep.selected_capacity);
  if (!rep.removed.empty()) {
    j["removed"] = rep.removed;
    j["round_ratios"] = rep.round_ratios;
    j["round_bounds"] = rep.round_bounds;
  }
  return j;
}

int cmd_select(const SelectArgs& a) {
  const auto net = substitute_big_l(load_network_file(a.network), a.big_l);
  const Strategy strategy = parse_strategy(a.strategy);
  const int k = a.k > 0 ? a.k : net.size() - 1;
  SelectionOptions opts;
  opts.capacity = capacity_options(false);
  if (!a.force_remove.empty() && strategy != Strategy::kWorstDrop) {
    throw_invalid("--force-remove applies to the worst-drop strategy only");
  }
  if (!a.schedule.empty() && strategy != Strategy::kIterative) {
    throw_invalid("--schedule applies to the iterative strategy only");
  }
  SelectionReport rep;
  switch (strategy) {
    case Strategy::kWorstDrop:
      rep = drop_worst(net, k, a.force_remove, opts);
      break;
    case Strategy::kScheduleReuse:
      if (k != net.size() - 1) throw_invalid("schedule-reuse selects exactly N-1 relays");
      rep = select_drop_one_schedule_reuse(net, opts);
      break;
    case Strategy::kIterative: {
      std::optional<Schedule> sched;
      if (!a.schedule.empty()) sched = load_schedule_file(a.schedule);
      rep = select_k_iterative(net, k, sched, opts);
      break;
    }
    case Strategy::kExhaustive:
      rep = select_k_exhaustive(net, k, opts);
      break;
  }
  std::cout << report_to_json(rep).dump(2) << '\n';
  if (!rep.meets_bound() || !rep.rounds_meet_bounds()) {
    std::cerr << "guarantee violated: fraction " << rep.fraction << " < bound " << rep.bound
              << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string family;
  int n = 0;
  std::string big_l = "inf";
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  std::optional<DiamondNetwork> net;
  if (a.family == "worst-case") {
    net = gen_worst_case(a.n, parse_big_l(a.big_l));
  } else if (a.family == "half-tight") {
    net = gen_half_tight(a.n, parse_big_l(a.big_l));
  } else if (a.family == "random") {
    net = gen_random(a.n, a.seed);
  } else {
    throw_invalid("unknown family '" + a.family + "' (expected worst-case, half-tight or random)");
  }
  write_output(a.output, network_to_json(*net).dump(2) + "\n");
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  int trials = 100;
  std::uint64_t seed = 1;
  int n_max = 0;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  opts.trials = a.trials;
  opts.seed = a.seed;
  opts.n_max = a.n_max;
  opts.capacity = capacity_options(false);
  const auto rep = run_verify_suite(a.suite, opts);
  json failures = json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"instance", f.instance}, {"expected", f.expected}, {"got", f.got}});
  }
  json out{{"suite", rep.suite},
           {"instances", rep.instances},
           {"passes", rep.passes},
           {"failures", std::move(failures)},
           {"wall_seconds", rep.wall_seconds}};
  std::cout << out.dump(2) << '\n';
  return rep.ok() ? kExitOk : kExitViolation;
}

struct SweepArgs {
  std::string family = "worst-case";
  std::string range = "2:10";
  std::string k = "best";
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_sweep(const SweepArgs& a) {
  SweepOptions opts;
  opts.family = parse_sweep_family(a.family);
  opts.seed = a.seed;
  opts.capacity = capacity_options(false);
  const auto colon = a.range.find(':');
  try {
    if (colon == std::string::npos) {
      opts.from = opts.to = std::stoi(a.range);
    } else {
      opts.from = std::stoi(a.range.substr(0, colon));
      opts.to = std::stoi(a.range.substr(colon + 1));
    }
    opts.k = a.k == "best" ? 0 : std::stoi(a.k);
  } catch (const std::exception&) {
    throw_invalid("--n-range must be A:B and --k must be 'best' or an integer");
  }
  if (a.k != "best" && opts.k < 1) throw_invalid("--k must be positive");
  write_output(a.output, sweep_to_csv(run_sweep(opts)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-duplex diamond network capacity and relay selection"};
  app.require_subcommand(1);

  CapacityArgs cap;
  auto* c = app.add_subcommand("capacity", "Approximate capacity of a network");
  c->add_option("--network", cap.network, "Network JSON file")->required();
  c->add_option("--mode", cap.mode, "hd or fd")->check(CLI::IsMember({"hd", "fd"}));
  c->add_flag("--exact", cap.exact, "Exact rational arithmetic");
  c->add_flag("--emit-schedule", cap.emit_schedule, "Print an optimal schedule");
  c->add_option("--big-l", cap.big_l, "Replace unbounded links by this value");

  SelectArgs sel;
  auto* s = app.add_subcommand("select", "Select k relays");
  s->add_option("--network", sel.network, "Network JSON file")->required();
  s->add_option("-k", sel.k, "Number of relays to keep (default N-1)");
  s->add_option("--strategy", sel.strategy, "worst-drop, schedule-reuse, iterative or exhaustive");
  s->add_option("--force-remove", sel.force_remove, "Relays to remove (worst-drop)");
  s->add_option("--schedule", sel.schedule, "Starting schedule JSON file (iterative)");
  s->add_option("--big-l", sel.big_l, "Replace unbounded links by this value");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a network JSON file");
  g->add_option("--family", gen.family, "worst-case, half-tight or random")->required();
  g->add_option("--n", gen.n, "Number of relays")->required();
  g->add_option("--big-l", gen.big_l, "inf or a number");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("-o,--output", gen.output, "Output file (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("--suite", ver.suite, "Suite name")->required();
  v->add_option("--trials", ver.trials, "Random trials");
  v->add_option("--seed", ver.seed, "Random seed");
  v->add_option("--n-max", ver.n_max, "Largest relay count (0: suite default)");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Emit a CSV of best-subnetwork fractions");
  w->add_option("--family", sw.family, "worst-case, half-tight, random or theorem3");
  w->add_option("--n-range", sw.range, "A:B (t for theorem3)");
  w->add_option("--k", sw.k, "best or an integer");
  w->add_option("--seed", sw.seed, "Random seed (random family)");
  w->add_option("--out", sw.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c->parsed()) return cmd_capacity(cap);
    if (s->parsed()) return cmd_select(sel);
    if (g->parsed()) return cmd_generate(gen);
    if (v->parsed()) return cmd_verify(ver);
    if (w->parsed()) return cmd_sweep(sw);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kInvalidInput: return kExitInput;
      case ErrorKind::kGuardExceeded: return kExitGuard;
      case ErrorKind::kInternal: return kExitViolation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitInput;
}
