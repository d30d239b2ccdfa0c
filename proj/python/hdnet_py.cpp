// Python bindings for the hdnet core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hdnet/capacity.hpp"
#include "hdnet/error.hpp"
#include "hdnet/io.hpp"
#include "hdnet/model.hpp"
#include "hdnet/selection.hpp"
#include "hdnet/submodular.hpp"
#include "hdnet/verify.hpp"

namespace py = pybind11;
using namespace hdnet;

namespace {

LinkCapacity link_of(double v) {
  return std::isinf(v) && v > 0 ? LinkCapacity::unbounded() : LinkCapacity::finite(v);
}

std::vector<LinkCapacity> links_of(const std::vector<double>& v) {
  std::vector<LinkCapacity> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(link_of(x));
  return out;
}

std::vector<double> values_of(const std::vector<LinkCapacity>& v) {
  std::vector<double> out;
  for (const auto& c : v) out.push_back(c.value());
  return out;
}

py::dict schedule_dict(const Schedule& s) {
  py::dict d;
  for (const auto& [state, p] : s.entries()) d[py::str(to_string(StateMask{state}, s.size()))] = p;
  return d;
}

Schedule schedule_from_dict(int n, const py::dict& d) {
  std::map<std::uint32_t, double> probs;
  for (const auto& [k, v] : d) {
    const auto text = k.cast<std::string>();
    if (static_cast<int>(text.size()) != n) throw_invalid("state '" + text + "' has the wrong length");
    probs[parse_mask_bits(text)] = v.cast<double>();
  }
  return Schedule(n, std::move(probs));
}

std::vector<std::string> cut_strings(const std::vector<CutMask>& cuts, int n) {
  std::vector<std::string> out;
  for (const auto& c : cuts) out.push_back(to_string(c, n));
  return out;
}

py::dict report_dict(const SelectionReport& r) {
  py::dict d;
  d["strategy"] = std::string(to_string(r.strategy));
  d["selected"] = r.selected;
  d["k"] = r.k;
  d["value_kind"] = std::string(to_string(r.value_kind));
  d["value"] = r.value;
  d["full_value"] = r.full_value;
  d["fraction"] = r.fraction;
  d["bound"] = r.bound;
  d["meets_bound"] = r.meets_bound();
  d["selected_capacity"] = r.selected_capacity ? py::cast(*r.selected_capacity) : py::none();
  d["removed"] = r.removed;
  d["round_ratios"] = r.round_ratios;
  d["round_bounds"] = r.round_bounds;
  return d;
}

CapacityOptions capacity_options(bool exact) {
  CapacityOptions o;
  o.arithmetic = exact ? Arithmetic::kRational : Arithmetic::kFloat;
  o.max_relays = lp_guard_from_env();
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Half-duplex diamond relay network capacity and relay selection";

  static py::exception<Error> base(m, "HdnetError");
  static py::exception<Error> guard(m, "GuardExceeded", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::kInvalidInput:
          PyErr_SetString(PyExc_ValueError, e.what());
          return;
        case ErrorKind::kGuardExceeded:
          guard(e.what());
          return;
        case ErrorKind::kInternal:
          base(e.what());
          return;
      }
    }
  });

  py::class_<DiamondNetwork>(m, "Network")
      .def(py::init([](const std::vector<double>& l, const std::vector<double>& r,
                       const std::string& name) {
             return DiamondNetwork(links_of(l), links_of(r), {}, name);
           }),
           py::arg("l"), py::arg("r"), py::arg("name") = "",
           "Links in bits per channel use; float('inf') marks an unbounded link.")
      .def_property_readonly("n", &DiamondNetwork::size)
      .def_property_readonly("l", [](const DiamondNetwork& n) { return values_of(n.uplinks()); })
      .def_property_readonly("r", [](const DiamondNetwork& n) { return values_of(n.downlinks()); })
      .def_property_readonly("labels", [](const DiamondNetwork& n) {
        std::vector<int> out;
        for (int i = 0; i < n.size(); ++i) out.push_back(n.label(i));
        return out;
      })
      .def_property_readonly("name", &DiamondNetwork::name)
      .def("to_json", &render_network)
      .def_static("from_json", [](const std::string& s) { return parse_network(s); })
      .def("subnetwork",
           [](const DiamondNetwork& n, const std::vector<int>& keep) {
             return subnetwork(n, relay_set(keep, n.size()));
           },
           py::arg("keep"), "Keep the given 1-based relay indices.")
      .def("__eq__", [](const DiamondNetwork& a, const DiamondNetwork& b) { return a == b; })
      .def("__repr__", [](const DiamondNetwork& n) { return "Network(" + render_network(n) + ")"; });

  m.def("worst_case", [](int n, double big_l) { return gen_worst_case(n, link_of(big_l)); },
        py::arg("n"), py::arg("big_l") = std::numeric_limits<double>::infinity());
  m.def("half_tight", [](int n, double big_l) { return gen_half_tight(n, link_of(big_l)); },
        py::arg("n"), py::arg("big_l") = std::numeric_limits<double>::infinity());
  m.def("random_network",
        [](int n, std::uint64_t seed, double lo, double hi) { return gen_random(n, seed, {lo, hi}); },
        py::arg("n"), py::arg("seed"), py::arg("lo") = CapacityRange{}.lo,
        py::arg("hi") = CapacityRange{}.hi);
  m.def("two_phase_schedule", [](int n) { return schedule_dict(gen_two_phase_schedule(n)); });

  m.def("single_relay_capacity",
        [](double l, double r) { return single_relay_capacity(link_of(l), link_of(r)); });
  m.def("fd_capacity", [](const DiamondNetwork& net) { return fd_capacity(net).value; });
  m.def(
      "hd_capacity",
      [](const DiamondNetwork& net, bool exact) {
        const auto res = hd_capacity(net, capacity_options(exact));
        py::dict d;
        d["value"] = res.value;
        d["schedule"] = res.optimal_schedule ? schedule_dict(*res.optimal_schedule) : py::dict();
        d["tight_cuts"] = cut_strings(res.tight_cuts, net.size());
        d["exact"] = exact ? py::cast(res.exact_value) : py::none();
        return d;
      },
      py::arg("net"), py::arg("exact") = false);
  m.def("dual_capacity", [](const DiamondNetwork& net) { return dual_capacity(net).value; });
  m.def(
      "fixed_schedule_rate",
      [](const DiamondNetwork& net, const py::dict& schedule) {
        return fixed_schedule_rate(net, schedule_from_dict(net.size(), schedule)).value;
      },
      py::arg("net"), py::arg("schedule"));

  m.def(
      "select",
      [](const DiamondNetwork& net, int k, const std::string& strategy,
         const std::vector<int>& force_remove) {
        SelectionOptions opts;
        opts.capacity = capacity_options(false);
        const int kk = k == 0 ? net.size() - 1 : k;
        switch (parse_strategy(strategy)) {
          case Strategy::kWorstDrop:
            return report_dict(drop_worst(net, kk, force_remove, opts));
          case Strategy::kScheduleReuse:
            if (kk != net.size() - 1) throw_invalid("schedule-reuse keeps exactly N-1 relays");
            return report_dict(select_drop_one_schedule_reuse(net, opts));
          case Strategy::kIterative:
            return report_dict(select_k_iterative(net, kk, std::nullopt, opts));
          case Strategy::kExhaustive:
            return report_dict(select_k_exhaustive(net, kk, opts));
        }
        throw_invalid("unknown strategy");
      },
      py::arg("net"), py::arg("k") = 0, py::arg("strategy") = "exhaustive",
      py::arg("force_remove") = std::vector<int>{},
      "Select k relays (k = 0 means N-1).");
  m.def("guarantee_bound",
        [](int n, int k, const std::string& s) { return guarantee_bound(n, k, parse_strategy(s)); });

  m.def(
      "check_lemma2",
      [](const std::vector<double>& weights, const std::vector<SetMask>& sets) {
        const auto rep =
            check_lemma2(weighted_max_function(weights), SetFamily(static_cast<int>(weights.size()), sets));
        return py::make_tuple(rep.lhs, rep.rhs, rep.holds);
      },
      py::arg("weights"), py::arg("sets"),
      "Threshold-set inequality for f(S) = max weight in S; returns (lhs, rhs, holds).");
  m.def("threshold_sets", [](int ground, const std::vector<SetMask>& sets) {
    return threshold_sets(SetFamily(ground, sets));
  });

  m.def("verify_suites", &verify_suite_names);
  m.def(
      "verify",
      [](const std::string& suite, int trials, std::uint64_t seed, int n_max) {
        VerifyOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        opts.n_max = n_max;
        opts.capacity = capacity_options(false);
        const auto rep = run_verify_suite(suite, opts);
        py::dict d;
        d["suite"] = rep.suite;
        d["instances"] = rep.instances;
        d["passes"] = rep.passes;
        d["ok"] = rep.ok();
        d["wall_seconds"] = rep.wall_seconds;
        py::list failures;
        for (const auto& f : rep.failures) {
          failures.append(py::dict(py::arg("instance") = f.instance, py::arg("expected") = f.expected,
                                   py::arg("got") = f.got));
        }
        d["failures"] = failures;
        return d;
      },
      py::arg("suite"), py::arg("trials") = 100, py::arg("seed") = 1, py::arg("n_max") = 0);
  m.def(
      "sweep",
      [](const std::string& family, int from, int to, int k, std::uint64_t seed) {
        SweepOptions opts;
        opts.family = parse_sweep_family(family);
        opts.from = from;
        opts.to = to;
        opts.k = k;
        opts.seed = seed;
        opts.capacity = capacity_options(false);
        py::list rows;
        for (const auto& r : run_sweep(opts)) {
          rows.append(py::dict(py::arg("N") = r.n, py::arg("C_full") = r.full_value,
                               py::arg("best_value") = r.best_value, py::arg("fraction") = r.fraction));
        }
        return rows;
      },
      py::arg("family"), py::arg("start"), py::arg("stop"), py::arg("k") = 0, py::arg("seed") = 1);
}
