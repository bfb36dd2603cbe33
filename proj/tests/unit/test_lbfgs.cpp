#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "hpt/banded.hpp"
#include "hpt/lbfgs.hpp"
#include "hpt/stencil.hpp"
#include "oracles.hpp"

namespace {

hpt::Objective rosenbrock() {
  return {[](std::span<const double> x, std::span<double> g) {
            double f = 0.0;
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
              const double a = x[i + 1] - x[i] * x[i];
              const double b = 1.0 - x[i];
              f += 100.0 * a * a + b * b;
              g[i] += -400.0 * x[i] * a - 2.0 * b;
              g[i + 1] += 200.0 * a;
            }
            return f;
          },
          nullptr};
}

}  // namespace

TEST(Lbfgs, RosenbrockConverges) {
  const auto r = hpt::minimize_lbfgs(rosenbrock(), {-1.2, 1.0, -1.2, 1.0, 0.5});
  ASSERT_EQ(r.status, hpt::LbfgsStatus::converged);
  for (double v : r.x) EXPECT_NEAR(v, 1.0, 1e-6);
  EXPECT_LT(r.gradient_norm, 1e-8);
}

TEST(Lbfgs, PreconditionedQuadratic) {
  // f = 1/2 sum d_i x_i^2 - x_i with exact diagonal preconditioner.
  std::vector<double> d(50);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::pow(10.0, 6.0 * static_cast<double>(i) / 49.0);
  hpt::Objective obj{[&](std::span<const double> x, std::span<double> g) {
                       double f = 0.0;
                       for (std::size_t i = 0; i < x.size(); ++i) {
                         f += 0.5 * d[i] * x[i] * x[i] - x[i];
                         g[i] = d[i] * x[i] - 1.0;
                       }
                       return f;
                     },
                     [&](std::span<double> v) {
                       for (std::size_t i = 0; i < v.size(); ++i) v[i] /= d[i];
                     }};
  const auto r = hpt::minimize_lbfgs(obj, std::vector<double>(50, 0.0));
  ASSERT_TRUE(r.converged());
  EXPECT_LE(r.iterations, 3);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(r.x[i], 1.0 / d[i], 1e-8);
}

TEST(Lbfgs, ReportsDivergenceBelowFloor) {
  hpt::Objective obj{[](std::span<const double> x, std::span<double> g) {
                       g[0] = -1.0;
                       return -x[0];
                     },
                     nullptr};
  hpt::LbfgsOptions opts;
  opts.value_floor = -100.0;
  const auto r = hpt::minimize_lbfgs(obj, {0.0}, opts);
  EXPECT_EQ(r.status, hpt::LbfgsStatus::diverged);
  EXPECT_LT(r.value, -100.0);
}

TEST(Lbfgs, IterationBudget) {
  hpt::LbfgsOptions opts;
  opts.max_iterations = 3;
  const auto r = hpt::minimize_lbfgs(rosenbrock(), {-1.2, 1.0}, opts);
  EXPECT_EQ(r.status, hpt::LbfgsStatus::max_iterations);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Lbfgs, NonFiniteRegionIsAvoided) {
  // -log(x) + x has its minimum at 1 and is undefined for x <= 0.
  hpt::Objective obj{[](std::span<const double> x, std::span<double> g) {
                       if (x[0] <= 0.0) return std::nan("");
                       g[0] = -1.0 / x[0] + 1.0;
                       return -std::log(x[0]) + x[0];
                     },
                     nullptr};
  const auto r = hpt::minimize_lbfgs(obj, {0.01});
  ASSERT_TRUE(r.converged());
  EXPECT_NEAR(r.x[0], 1.0, 1e-7);
}

TEST(Lbfgs, RejectsNonFiniteStart) {
  hpt::Objective obj{[](std::span<const double>, std::span<double>) { return std::nan(""); }, nullptr};
  EXPECT_THROW(hpt::minimize_lbfgs(obj, {1.0}), std::invalid_argument);
  EXPECT_THROW(hpt::minimize_lbfgs(hpt::Objective{}, {1.0}), std::invalid_argument);
}

TEST(Lbfgs, StatusNames) {
  EXPECT_EQ(hpt::to_string(hpt::LbfgsStatus::converged), "converged");
  EXPECT_EQ(hpt::to_string(hpt::LbfgsStatus::stalled), "stalled");
  EXPECT_EQ(hpt::to_string(hpt::LbfgsStatus::line_search_failed), "line_search_failed");
}

TEST(Banded, CholeskySolvesAgainstDenseProduct) {
  oracle::Rng rng(5);
  const std::size_t n = 40;
  const std::size_t bw = 3;
  hpt::BandedSpdMatrix a(n, bw);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i >= bw ? i - bw : 0); j < i; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      a.add(i, j, v);
      dense[i][j] += v;
      dense[j][i] += v;
    }
    a.add(i, i, 10.0);
    dense[i][i] += 10.0;
  }
  EXPECT_EQ(a.get(2, 5), dense[2][5]);
  const auto x = rng.vector(n, -1.0, 1.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i] += dense[i][j] * x[j];
  a.factorize();
  a.solve_in_place(b);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(b[i], x[i], 1e-12);
}

TEST(Banded, GramMatrixAndPinning) {
  const hpt::Grid g(0.0, 1.0, 30);
  const hpt::DiffOperator d(g, 2);
  hpt::BandedSpdMatrix a(g.size(), d.max_width());
  const std::vector<double> w(d.rows(), 1.0);
  a.add_gram(d, w, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) a.add(i, i, 1.0);
  a.pin(0);
  a.pin(29);
  EXPECT_EQ(a.get(0, 0), 1.0);
  EXPECT_EQ(a.get(0, 1), 0.0);
  a.factorize();
  std::vector<double> b(g.size(), 1.0);
  a.solve_in_place(b);
  EXPECT_DOUBLE_EQ(b[0], 1.0);
  EXPECT_DOUBLE_EQ(b[29], 1.0);
}

TEST(Banded, IndefiniteMatrixThrows) {
  hpt::BandedSpdMatrix a(3, 1);
  a.add(0, 0, 1.0);
  a.add(1, 1, -1.0);
  a.add(2, 2, 1.0);
  EXPECT_THROW(a.factorize(), std::runtime_error);
}
