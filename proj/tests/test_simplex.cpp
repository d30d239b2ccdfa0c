#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hdnet/rational.hpp"
#include "hdnet/simplex.hpp"

using namespace hdnet;

namespace {

// Independent oracle for games with two rows: the minimizer mixes rows with
// weight x on row 0, so the value is min over x in [0,1] of the upper
// envelope max_j (x a_j + (1-x) b_j). The minimum sits at an endpoint or at a
// crossing of two column lines.
double two_row_value(const std::vector<double>& m, std::size_t cols) {
  const auto envelope = [&](double x) {
    double best = -1e300;
    for (std::size_t j = 0; j < cols; ++j) best = std::max(best, x * m[j] + (1 - x) * m[cols + j]);
    return best;
  };
  double best = std::min(envelope(0.0), envelope(1.0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i + 1; j < cols; ++j) {
      // x a_i + (1-x) b_i = x a_j + (1-x) b_j
      const double den = (m[i] - m[cols + i]) - (m[j] - m[cols + j]);
      if (den == 0.0) continue;
      const double x = (m[cols + j] - m[cols + i]) / den;
      if (x >= 0.0 && x <= 1.0) best = std::min(best, envelope(x));
    }
  }
  return best;
}

template <class T>
T payoff_against(const std::vector<T>& m, std::size_t cols, std::size_t row,
                 const std::vector<T>& y) {
  T v(0);
  for (std::size_t j = 0; j < cols; ++j) v += m[row * cols + j] * y[j];
  return v;
}

}  // namespace

TEST(Simplex, MatchingPennies) {
  const std::vector<double> m{1, -1, -1, 1};
  const auto sol = lp::solve_column_game<double>(m, 2, 2);
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
  EXPECT_NEAR(sol.column_strategy[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.row_strategy[1], 0.5, 1e-12);
}

TEST(Simplex, RockPaperScissors) {
  const std::vector<double> m{0, 1, -1, -1, 0, 1, 1, -1, 0};
  const auto sol = lp::solve_column_game<double>(m, 3, 3);
  EXPECT_NEAR(sol.value, 0.0, 1e-12);
  for (double p : sol.column_strategy) EXPECT_NEAR(p, 1.0 / 3, 1e-12);
}

TEST(Simplex, SaddlePoint) {
  // Column player maximizes the row minimum: column 2 guarantees 2.
  const std::vector<double> m{1, 2, 3, 4};
  const auto sol = lp::solve_column_game<double>(m, 2, 2);
  EXPECT_NEAR(sol.value, 2.0, 1e-12);
  EXPECT_NEAR(sol.column_strategy[1], 1.0, 1e-12);
  EXPECT_NEAR(sol.row_strategy[0], 1.0, 1e-12);
}

TEST(Simplex, ZeroGame) {
  const std::vector<double> m(6, 0.0);
  EXPECT_NEAR(lp::solve_column_game<double>(m, 2, 3).value, 0.0, 1e-12);
}

TEST(Simplex, RejectsBadShapes) {
  const std::vector<double> m{1, 2, 3};
  EXPECT_THROW(lp::solve_column_game<double>(m, 2, 2), Error);
  EXPECT_THROW(lp::solve_column_game<double>(std::vector<double>{}, 0, 0), Error);
}

TEST(Simplex, TwoRowGamesMatchEnvelopeOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t cols = 1 + trial % 7;
    std::vector<double> m(2 * cols);
    for (double& x : m) x = u(rng);
    const auto sol = lp::solve_column_game<double>(m, 2, cols);
    EXPECT_NEAR(sol.value, two_row_value(m, cols), 1e-9) << "trial " << trial;
  }
}

TEST(Simplex, StrategiesCertifyTheValue) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + trial % 9;
    const std::size_t cols = 1 + (trial / 9) % 8;
    std::vector<double> m(rows * cols);
    for (double& x : m) x = u(rng);
    const auto sol = lp::solve_column_game<double>(m, rows, cols);
    double sum_y = 0.0;
    for (double p : sol.column_strategy) sum_y += p;
    EXPECT_NEAR(sum_y, 1.0, 1e-9);
    // Every row pays at least the value against the column strategy...
    for (std::size_t i = 0; i < rows; ++i) {
      EXPECT_GE(payoff_against(m, cols, i, sol.column_strategy), sol.value - 1e-9);
    }
    // ...and every column pays at most the value against the row strategy.
    for (std::size_t j = 0; j < cols; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < rows; ++i) v += sol.row_strategy[i] * m[i * cols + j];
      EXPECT_LE(v, sol.value + 1e-9);
    }
  }
}

TEST(Simplex, RationalIsExact) {
  // y1 * 1 = y2 * 2 at the optimum: y = (2/3, 1/3), value 2/3.
  const std::vector<Rational> m{Rational(1), Rational(0), Rational(0), Rational(2)};
  const auto sol = lp::solve_column_game<Rational>(m, 2, 2);
  EXPECT_EQ(sol.value, Rational(2, 3));
  EXPECT_EQ(sol.column_strategy[0], Rational(2, 3));
  EXPECT_EQ(sol.column_strategy[1], Rational(1, 3));
}

TEST(Simplex, RationalMatchesFloat) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> u(0, 20);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + trial % 5;
    const std::size_t cols = 2 + trial % 4;
    std::vector<double> md(rows * cols);
    std::vector<Rational> mq(rows * cols);
    for (std::size_t k = 0; k < md.size(); ++k) {
      const int v = u(rng);
      md[k] = v / 8.0;
      mq[k] = Rational(v, 8);
      mq[k].canonicalize();
    }
    const auto fd = lp::solve_column_game<double>(md, rows, cols);
    const auto fq = lp::solve_column_game<Rational>(mq, rows, cols);
    EXPECT_NEAR(fd.value, fq.value.get_d(), 1e-9);
    for (std::size_t i = 0; i < rows; ++i) {
      EXPECT_GE(payoff_against(mq, cols, i, fq.column_strategy), fq.value);
    }
  }
}
