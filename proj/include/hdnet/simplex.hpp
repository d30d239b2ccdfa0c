#pragma once

// Dense tableau simplex for two-player zero-sum matrix games.
//
// After shifting M by a constant so every entry is at least 1, the LP
// max { 1'z : (M + shift) z <= 1, z >= 0 } has a feasible origin, so no phase
// one is needed, and its optimum is 1/(w + shift) where w = min_y max_i (My)_i
// is the value when the column player minimizes. The other player's optimal
// strategy is read off the final objective row.
//
// The tableau is kept in condensed (Tucker) form: one row per basic variable,
// one column per nonbasic variable. Entering columns follow Dantzig's rule
// until a run of degenerate pivots is seen, after which Bland's smallest-index
// rule is used for the rest of the solve, which rules out cycling.
//
// Scalar is double or an exact field type (see rational.hpp); comparisons go
// through ScalarTraits so that exact types never use a tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hdnet/error.hpp"

namespace hdnet::lp {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr double kEps = 1e-11;
  static bool positive(double x) { return x > kEps; }
  static bool negative(double x) { return x < -kEps; }
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  // a < b beyond tolerance, scaled for ratios of moderate size.
  static bool less(double a, double b) { return a < b - kEps * (1.0 + std::abs(b)); }
};

template <class T>
struct GameSolution {
  T value{};
  std::vector<T> column_strategy;
  std::vector<T> row_strategy;
  std::size_t pivots = 0;
  bool used_bland = false;
};

struct SimplexOptions {
  // Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degenerate_run_limit = 50;
  // Hard cap on pivots, as a multiple of rows + columns.
  std::size_t pivot_limit_factor = 200;
};

template <class T>
class GameTableau {
 public:
  using Traits = ScalarTraits<T>;

  GameTableau(std::span<const T> payoff, std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), stride_(cols + 1), t_((rows + 1) * (cols + 1)) {
    if (rows == 0 || cols == 0) {
      throw Error(ErrorKind::kInvalidInput, "matrix game needs at least one row and column");
    }
    if (payoff.size() != rows * cols) {
      throw Error(ErrorKind::kInvalidInput, "payoff size does not match rows * cols");
    }
    T lowest = *std::min_element(payoff.begin(), payoff.end());
    shift_ = T(1) - lowest;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = payoff[i * n_ + j] + shift_;
      at(i, n_) = T(1);
    }
    for (std::size_t j = 0; j < n_; ++j) at(m_, j) = T(-1);
    at(m_, n_) = T(0);
    basic_.resize(m_);
    nonbasic_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = j;
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = n_ + i;
  }

  GameSolution<T> solve(const SimplexOptions& opts = {}) {
    GameSolution<T> out;
    const std::size_t limit = opts.pivot_limit_factor * (m_ + n_) + 1000;
    int degenerate_run = 0;
    bool bland = false;
    for (;;) {
      const std::size_t q = entering(bland);
      if (q == kNone) break;
      const std::size_t p = leaving(q);
      if (p == kNone) {
        // Every constraint row has a positive entry, so this cannot happen.
        throw Error(ErrorKind::kInternal, "matrix game LP reported unbounded");
      }
      if (!Traits::positive(at(p, n_))) {
        if (++degenerate_run > opts.degenerate_run_limit) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(p, q);
      if (++out.pivots > limit) {
        throw Error(ErrorKind::kInternal, "simplex exceeded pivot limit");
      }
    }
    out.used_bland = bland;

    const T total = at(m_, n_);
    if (!Traits::positive(total)) {
      throw Error(ErrorKind::kInternal, "matrix game LP has non-positive optimum");
    }
    out.value = T(1) / total - shift_;

    out.column_strategy.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] < n_) out.column_strategy[basic_[i]] = at(i, n_) / total;
    }
    out.row_strategy.assign(m_, T(0));
    for (std::size_t j = 0; j < n_; ++j) {
      if (nonbasic_[j] >= n_) out.row_strategy[nonbasic_[j] - n_] = at(m_, j) / total;
    }
    clean(out.column_strategy);
    clean(out.row_strategy);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  T& at(std::size_t i, std::size_t j) { return t_[i * stride_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return t_[i * stride_ + j]; }

  std::size_t entering(bool bland) const {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < n_; ++j) {
      const T& c = at(m_, j);
      if (!Traits::negative(c)) continue;
      if (best == kNone) {
        best = j;
      } else if (bland) {
        if (nonbasic_[j] < nonbasic_[best]) best = j;
      } else if (c < at(m_, best)) {
        best = j;
      }
    }
    return best;
  }

  std::size_t leaving(std::size_t q) const {
    std::size_t best = kNone;
    T best_ratio{};
    for (std::size_t i = 0; i < m_; ++i) {
      const T& a = at(i, q);
      if (!Traits::positive(a)) continue;
      T ratio = at(i, n_) / a;
      if (best == kNone || Traits::less(ratio, best_ratio) ||
          (!Traits::less(best_ratio, ratio) && basic_[i] < basic_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::size_t p, std::size_t q) {
    const T inv = T(1) / at(p, q);
    for (std::size_t j = 0; j <= n_; ++j) {
      if (j != q) at(p, j) *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == p) continue;
      const T factor = at(i, q);
      if (factor == T(0)) continue;
      T* row = &t_[i * stride_];
      const T* prow = &t_[p * stride_];
      for (std::size_t j = 0; j <= n_; ++j) {
        if (j != q) row[j] -= factor * prow[j];
      }
      row[q] = -factor * inv;
    }
    at(p, q) = inv;
    std::swap(basic_[p], nonbasic_[q]);
  }

  static void clean(std::vector<T>& v) {
    for (T& x : v) {
      if (!Traits::positive(x)) x = T(0);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t stride_;
  std::vector<T> t_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  T shift_{};
};

// Value and optimal strategies of the game in which the column player
// maximizes the row player's minimum. `payoff` is row-major, rows x cols.
//
// The tableau LP lets its variables pick the player who minimizes the largest
// constraint payoff, so it is set up on the transpose: variables are rows
// (the minimizer), constraints are columns, and the maximizer's strategy is
// the dual solution. Floating payoffs are scaled to unit magnitude first so
// the fixed pivot tolerances do not depend on the link units.
template <class T>
GameSolution<T> solve_column_game(std::span<const T> payoff, std::size_t rows,
                                  std::size_t cols, const SimplexOptions& opts = {}) {
  if (payoff.size() != rows * cols) {
    throw Error(ErrorKind::kInvalidInput, "payoff size does not match rows * cols");
  }
  T scale(1);
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& x : payoff) scale = std::max(scale, std::abs(x));
  }
  std::vector<T> transposed(payoff.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) transposed[j * rows + i] = payoff[i * cols + j] / scale;
  }
  GameTableau<T> tableau(transposed, cols, rows);
  GameSolution<T> sol = tableau.solve(opts);
  sol.value *= scale;
  std::swap(sol.column_strategy, sol.row_strategy);
  return sol;
}

}  // namespace hdnet::lp
