#include "hdnet/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "hdnet/capacity_exact.hpp"
#include "hdnet/error.hpp"
#include "hdnet/simplex.hpp"

namespace hdnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_width(const DiamondNetwork& net, std::uint32_t bits, const char* what) {
  if ((bits & ~CutMask::full(net.size()).bits) != 0) {
    throw_invalid(std::string(what) + " has bits beyond the relay count");
  }
}

template <class T>
T max_over(const std::vector<T>& v, std::uint32_t bits) {
  T m(0);
  while (bits != 0) {
    const int i = std::countr_zero(bits);
    if (v[static_cast<std::size_t>(i)] > m) m = v[static_cast<std::size_t>(i)];
    bits &= bits - 1;
  }
  return m;
}

// Link values of a network converted to the scalar type. Only used for
// bounded cuts, where the Unbounded links never participate.
template <class T>
struct LinkTable {
  std::vector<T> up;
  std::vector<T> down;

  explicit LinkTable(const DiamondNetwork& net) {
    for (int i = 0; i < net.size(); ++i) {
      up.push_back(convert(net.uplink(i)));
      down.push_back(convert(net.downlink(i)));
    }
  }

  static T convert(const LinkCapacity& c) {
    return c.is_unbounded() ? T(0) : lp::ScalarTraits<T>::from_double(c.value());
  }

  T entry(std::uint32_t full, std::uint32_t cut, std::uint32_t state) const {
    return max_over(up, ~state & cut & full) + max_over(down, state & ~cut & full);
  }
};

std::vector<std::uint32_t> bounded_cuts(const DiamondNetwork& net) {
  std::vector<std::uint32_t> rows;
  const std::uint32_t count = 1u << net.size();
  for (std::uint32_t a = 0; a < count; ++a) {
    if (!cut_is_unbounded(net, CutMask{a})) rows.push_back(a);
  }
  return rows;
}

// Payoff of the scheduling game restricted to bounded cuts (rows) and the
// given states (columns), row-major.
template <class T>
std::vector<T> game_payoff(const DiamondNetwork& net, const std::vector<std::uint32_t>& rows,
                           const std::vector<std::uint32_t>& cols) {
  const LinkTable<T> links(net);
  const std::uint32_t full = CutMask::full(net.size()).bits;
  std::vector<T> payoff;
  payoff.reserve(rows.size() * cols.size());
  for (std::uint32_t a : rows) {
    for (std::uint32_t s : cols) payoff.push_back(links.entry(full, a, s));
  }
  return payoff;
}

std::vector<std::uint32_t> all_states(int n) {
  std::vector<std::uint32_t> cols(std::size_t{1} << n);
  std::iota(cols.begin(), cols.end(), 0u);
  return cols;
}

void check_guard(const DiamondNetwork& net, int max_relays) {
  if (net.size() > max_relays) {
    throw_guard("half-duplex LP guard: " + std::to_string(net.size()) + " relays exceeds limit " +
                std::to_string(max_relays));
  }
}

Schedule schedule_from_strategy(int n, const std::vector<std::uint32_t>& cols,
                                const std::vector<double>& strategy) {
  double total = 0.0;
  for (double p : strategy) total += p;
  std::map<std::uint32_t, double> probs;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (strategy[j] > 0.0) probs[cols[j]] = strategy[j] / total;
  }
  return Schedule(n, std::move(probs));
}

template <class T>
struct RawGame {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
  lp::GameSolution<T> solution;
  // Certified bounds on the full game value from the returned strategies.
  T low{};
  T high{};
};

// Float solves whose certified bounds differ by more than this are redone in
// exact arithmetic. Ill-conditioned games (links spanning many orders of
// magnitude) need probabilities below the pivot tolerance.
constexpr double kCertifiedGap = 1e-9;

bool gap_too_wide(double low, double high) {
  return high - low > kCertifiedGap * (1.0 + std::abs(high));
}

// Double oracle: solve the game restricted to a few cuts and states, then add
// the best-response cut to the restricted schedule and the best-response state
// to the restricted cut distribution. When neither improves on the restricted
// value, the restricted equilibrium is an equilibrium of the full game. Each
// restricted game stays small even when 2^n is large and heavily degenerate.
template <class T>
RawGame<T> solve_primal(const DiamondNetwork& net) {
  using Traits = lp::ScalarTraits<T>;
  RawGame<T> g;
  const auto cuts = bounded_cuts(net);
  if (cuts.empty()) return g;
  const LinkTable<T> links(net);
  const std::uint32_t full = CutMask::full(net.size()).bits;
  const std::uint32_t states = full + 1;

  const auto best_cut = [&](const std::vector<T>& lambda, T& value) {
    std::uint32_t arg = cuts.front();
    bool first = true;
    for (std::uint32_t a : cuts) {
      T v(0);
      for (std::size_t j = 0; j < g.cols.size(); ++j) {
        if (lambda[j] != T(0)) v += lambda[j] * links.entry(full, a, g.cols[j]);
      }
      if (first || v < value) {
        value = v;
        arg = a;
        first = false;
      }
    }
    return arg;
  };

  g.cols = {0u};
  T ignored;
  g.rows = {best_cut(std::vector<T>{T(1)}, ignored)};
  for (;;) {
    std::vector<T> payoff;
    payoff.reserve(g.rows.size() * g.cols.size());
    for (std::uint32_t a : g.rows) {
      for (std::uint32_t s : g.cols) payoff.push_back(links.entry(full, a, s));
    }
    g.solution = lp::solve_column_game<T>(payoff, g.rows.size(), g.cols.size());

    T low(0);
    const std::uint32_t cut = best_cut(g.solution.column_strategy, low);
    T high(0);
    std::uint32_t state = 0;
    for (std::uint32_t s = 0; s < states; ++s) {
      T v(0);
      for (std::size_t i = 0; i < g.rows.size(); ++i) {
        if (g.solution.row_strategy[i] != T(0)) {
          v += g.solution.row_strategy[i] * links.entry(full, g.rows[i], s);
        }
      }
      if (s == 0 || v > high) {
        high = v;
        state = s;
      }
    }

    g.low = low;
    g.high = high;
    bool grew = false;
    if (Traits::less(low, g.solution.value) &&
        std::find(g.rows.begin(), g.rows.end(), cut) == g.rows.end()) {
      g.rows.push_back(cut);
      grew = true;
    }
    if (Traits::less(g.solution.value, high) &&
        std::find(g.cols.begin(), g.cols.end(), state) == g.cols.end()) {
      g.cols.push_back(state);
      grew = true;
    }
    if (!grew) break;
  }
  return g;
}

// Cut player's LP: maximize min_s sum_A mu_A (K - M[A][s]) over mu; the dual
// value is K minus that.
template <class T>
RawGame<T> solve_dual(const DiamondNetwork& net, T& top) {
  RawGame<T> g;
  g.rows = bounded_cuts(net);
  g.cols = all_states(net.size());
  if (g.rows.empty()) return g;
  const auto payoff = game_payoff<T>(net, g.rows, g.cols);
  top = *std::max_element(payoff.begin(), payoff.end());
  std::vector<T> transposed(payoff.size());
  const std::size_t m = g.rows.size();
  const std::size_t n = g.cols.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) transposed[j * m + i] = top - payoff[i * n + j];
  }
  g.solution = lp::solve_column_game<T>(transposed, n, m);

  // Certify: the state mix (the dual's row strategy) guarantees at least low
  // on every cut, the cut mix guarantees at most high on every state.
  const auto& states_mix = g.solution.row_strategy;
  const auto& cuts_mix = g.solution.column_strategy;
  for (std::size_t i = 0; i < m; ++i) {
    T v(0);
    for (std::size_t j = 0; j < n; ++j) v += states_mix[j] * payoff[i * n + j];
    if (i == 0 || v < g.low) g.low = v;
  }
  for (std::size_t j = 0; j < n; ++j) {
    T v(0);
    for (std::size_t i = 0; i < m; ++i) v += cuts_mix[i] * payoff[i * n + j];
    if (j == 0 || v > g.high) g.high = v;
  }
  return g;
}

}  // namespace

int lp_guard_from_env() {
  const char* v = std::getenv("HDNET_LP_GUARD");
  if (v == nullptr || *v == '\0') return kDefaultLpGuard;
  char* end = nullptr;
  const long g = std::strtol(v, &end, 10);
  if (*end != '\0' || g < 1 || g > 20) {
    throw_invalid("HDNET_LP_GUARD must be an integer in [1, 20]");
  }
  return static_cast<int>(g);
}

bool cut_is_unbounded(const DiamondNetwork& net, CutMask cut) {
  check_width(net, cut.bits, "cut mask");
  for (int i = 0; i < net.size(); ++i) {
    if (cut.test(i) ? net.uplink(i).is_unbounded() : net.downlink(i).is_unbounded()) return true;
  }
  return false;
}

double cut_state_value(const DiamondNetwork& net, CutMask cut, StateMask state) {
  check_width(net, cut.bits, "cut mask");
  check_width(net, state.bits, "state mask");
  const std::uint32_t full = CutMask::full(net.size()).bits;
  const std::uint32_t listen_in_a = ~state.bits & cut.bits & full;
  const std::uint32_t transmit_in_ac = state.bits & ~cut.bits & full;
  double best_l = 0.0;
  double best_r = 0.0;
  for (int i = 0; i < net.size(); ++i) {
    if ((listen_in_a >> i) & 1u) best_l = std::max(best_l, net.uplink(i).value());
    if ((transmit_in_ac >> i) & 1u) best_r = std::max(best_r, net.downlink(i).value());
  }
  return best_l + best_r;
}

double scheduled_cut_value(const DiamondNetwork& net, const Schedule& sched, CutMask cut) {
  if (sched.size() != net.size()) throw_invalid("schedule width differs from the network");
  if (cut_is_unbounded(net, cut)) return kInf;
  double v = 0.0;
  for (const auto& [s, p] : sched.entries()) v += p * cut_state_value(net, cut, StateMask{s});
  return v;
}

RateValue fixed_schedule_rate(const DiamondNetwork& net, const Schedule& sched) {
  if (sched.size() != net.size()) throw_invalid("schedule width differs from the network");
  if (net.size() > kFdEnumerationGuard) throw_guard("too many relays for cut enumeration");
  RateValue best{kInf, CutMask{}};
  const std::uint32_t count = 1u << net.size();
  for (std::uint32_t a = 0; a < count; ++a) {
    const double v = scheduled_cut_value(net, sched, CutMask{a});
    if (v < best.value) best = {v, CutMask{a}};
  }
  return best;
}

CapacityResult fd_capacity(const DiamondNetwork& net) {
  if (net.size() > kFdEnumerationGuard) throw_guard("too many relays for cut enumeration");
  const std::uint32_t count = 1u << net.size();
  const std::uint32_t full = CutMask::full(net.size()).bits;
  std::vector<double> values(count);
  double best = kInf;
  for (std::uint32_t a = 0; a < count; ++a) {
    double l = 0.0;
    double r = 0.0;
    for (int i = 0; i < net.size(); ++i) {
      if ((a >> i) & 1u) {
        l = std::max(l, net.uplink(i).value());
      } else if ((full >> i) & 1u) {
        r = std::max(r, net.downlink(i).value());
      }
    }
    values[a] = l + r;
    best = std::min(best, values[a]);
  }
  CapacityResult out;
  out.value = best;
  if (std::isfinite(best)) {
    for (std::uint32_t a = 0; a < count; ++a) {
      if (values[a] <= best + kTightTolerance) out.tight_cuts.push_back(CutMask{a});
    }
  }
  return out;
}

double fd_capacity_fast(const DiamondNetwork& net) {
  const auto n = static_cast<std::size_t>(net.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.uplinks()[a] < net.uplinks()[b];
  });
  // suffix[k] = max downlink among order[k..n-1].
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    suffix[k] = std::max(suffix[k + 1], net.downlinks()[order[k]].value());
  }
  double best = suffix[0];
  for (std::size_t k = 1; k <= n; ++k) {
    best = std::min(best, net.uplinks()[order[k - 1]].value() + suffix[k]);
  }
  return best;
}

double single_relay_capacity(double l, double r) {
  if (std::isinf(l) && std::isinf(r)) return kInf;
  if (std::isinf(l)) return r;
  if (std::isinf(r)) return l;
  if (l + r == 0.0) return 0.0;
  return l * r / (l + r);
}

double single_relay_capacity(LinkCapacity l, LinkCapacity r) {
  return single_relay_capacity(l.value(), r.value());
}

CapacityResult hd_capacity(const DiamondNetwork& net, const CapacityOptions& opts) {
  check_guard(net, opts.max_relays);
  const int n = net.size();
  CapacityResult out;
  out.arithmetic = opts.arithmetic;

  const auto fill_exact = [&](const ExactCapacity& exact) {
    if (exact.unbounded) {
      out.value = kInf;
      out.exact_value = "inf";
      out.optimal_schedule = Schedule::point(n, StateMask{});
      return out;
    }
    out.value = exact.value.get_d();
    out.exact_value = to_string(exact.value);
    std::map<std::uint32_t, double> probs;
    for (const auto& [s, p] : exact.schedule) probs[s] = p.get_d();
    out.optimal_schedule = Schedule(n, std::move(probs));
    const std::uint32_t count = 1u << n;
    const LinkTable<Rational> links(net);
    for (std::uint32_t a = 0; a < count; ++a) {
      if (cut_is_unbounded(net, CutMask{a})) continue;
      Rational v = 0;
      for (const auto& [s, p] : exact.schedule) v += p * links.entry(count - 1, a, s);
      if (v == exact.value) out.tight_cuts.push_back(CutMask{a});
    }
    return out;
  };
  if (opts.arithmetic == Arithmetic::kRational) return fill_exact(hd_capacity_exact(net, opts.max_relays));

  const auto g = solve_primal<double>(net);
  if (!g.rows.empty() && gap_too_wide(g.low, g.high)) {
    fill_exact(hd_capacity_exact(net, opts.max_relays));
    out.exact_value.clear();
    return out;
  }
  if (g.rows.empty()) {
    out.value = kInf;
    out.optimal_schedule = Schedule::point(n, StateMask{});
    return out;
  }
  out.value = std::max(0.0, g.solution.value);
  out.optimal_schedule = schedule_from_strategy(n, g.cols, g.solution.column_strategy);
  for (std::uint32_t a : bounded_cuts(net)) {
    if (scheduled_cut_value(net, *out.optimal_schedule, CutMask{a}) <= out.value + kTightTolerance) {
      out.tight_cuts.push_back(CutMask{a});
    }
  }
  return out;
}

DualResult dual_capacity(const DiamondNetwork& net, const CapacityOptions& opts) {
  check_guard(net, opts.max_relays);
  DualResult out;
  const auto fill_exact = [&](const ExactCapacity& exact) {
    if (exact.unbounded) {
      out.value = kInf;
      out.exact_value = "inf";
      return out;
    }
    out.value = exact.value.get_d();
    out.exact_value = to_string(exact.value);
    for (const auto& [a, p] : exact.schedule) out.cut_distribution.emplace_back(CutMask{a}, p.get_d());
    return out;
  };
  if (opts.arithmetic == Arithmetic::kRational) {
    return fill_exact(dual_capacity_exact(net, opts.max_relays));
  }
  double top = 0.0;
  const auto g = solve_dual<double>(net, top);
  if (!g.rows.empty() && gap_too_wide(g.low, g.high)) {
    fill_exact(dual_capacity_exact(net, opts.max_relays));
    out.exact_value.clear();
    return out;
  }
  if (g.rows.empty()) {
    out.value = kInf;
    return out;
  }
  out.value = top - g.solution.value;
  double total = 0.0;
  for (double p : g.solution.column_strategy) total += p;
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const double p = g.solution.column_strategy[i];
    if (p > 0.0) out.cut_distribution.emplace_back(CutMask{g.rows[i]}, p / total);
  }
  return out;
}

ExactCapacity hd_capacity_exact(const DiamondNetwork& net, int max_relays) {
  check_guard(net, max_relays);
  ExactCapacity out;
  const auto g = solve_primal<Rational>(net);
  if (g.rows.empty()) {
    out.unbounded = true;
    return out;
  }
  out.value = g.solution.value;
  for (std::size_t j = 0; j < g.cols.size(); ++j) {
    if (sgn(g.solution.column_strategy[j]) > 0) out.schedule[g.cols[j]] = g.solution.column_strategy[j];
  }
  return out;
}

ExactCapacity dual_capacity_exact(const DiamondNetwork& net, int max_relays) {
  check_guard(net, max_relays);
  ExactCapacity out;
  Rational top;
  const auto g = solve_dual<Rational>(net, top);
  if (g.rows.empty()) {
    out.unbounded = true;
    return out;
  }
  out.value = top - g.solution.value;
  // For the dual, "schedule" carries the cut distribution keyed by cut mask.
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    if (sgn(g.solution.column_strategy[i]) > 0) out.schedule[g.rows[i]] = g.solution.column_strategy[i];
  }
  return out;
}

Rational fixed_schedule_rate_exact(const DiamondNetwork& net, const ExactSchedule& sched) {
  const LinkTable<Rational> links(net);
  const std::uint32_t count = 1u << net.size();
  Rational total = 0;
  for (const auto& [s, p] : sched) {
    if (sgn(p) < 0) throw_invalid("schedule probabilities must be nonnegative");
    if (s >= count) throw_invalid("schedule state has bits beyond the relay count");
    total += p;
  }
  if (total != 1) throw_invalid("exact schedule must sum to exactly 1");
  bool any = false;
  Rational best;
  for (std::uint32_t a = 0; a < count; ++a) {
    if (cut_is_unbounded(net, CutMask{a})) continue;
    Rational v = 0;
    for (const auto& [s, p] : sched) v += p * links.entry(count - 1, a, s);
    if (!any || v < best) {
      best = v;
      any = true;
    }
  }
  if (!any) throw_invalid("every cut is unbounded; the rate is infinite");
  return best;
}

std::optional<Schedule> sparsify_schedule(const DiamondNetwork& net, double target,
                                          const SparsifyOptions& opts) {
  const int n = net.size();
  if (n > opts.max_relays) {
    throw_guard("sparsification guard: " + std::to_string(n) + " relays exceeds limit " +
                std::to_string(opts.max_relays));
  }
  const auto rows = bounded_cuts(net);
  if (rows.empty()) return Schedule::point(n, StateMask{});
  const auto states = all_states(n);
  const auto full_payoff = game_payoff<double>(net, rows, states);
  const std::size_t total_states = states.size();
  const std::size_t max_support = std::min<std::size_t>(static_cast<std::size_t>(n) + 1, total_states);

  for (std::size_t k = 1; k <= max_support; ++k) {
    // Lexicographic k-combinations of state indices.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
      std::vector<double> payoff;
      payoff.reserve(rows.size() * k);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j : idx) payoff.push_back(full_payoff[i * total_states + j]);
      }
      const auto sol = lp::solve_column_game<double>(payoff, rows.size(), k);
      if (sol.value >= target - opts.tolerance) {
        std::vector<std::uint32_t> cols;
        for (std::size_t j : idx) cols.push_back(states[j]);
        auto sched = schedule_from_strategy(n, cols, sol.column_strategy);
        if (fixed_schedule_rate(net, sched).value >= target - opts.tolerance) return sched;
      }
      // Advance to the next combination.
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == total_states - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace hdnet
