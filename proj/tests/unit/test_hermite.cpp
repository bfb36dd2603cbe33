#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "hpt/hermite.hpp"
#include "oracles.hpp"

using hpt::BoundaryData;
using hpt::CouplingKind;

namespace {

std::string to_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

// (prod_{i=1}^n (i-1)!)^2 in 128-bit integers.
std::string factorial_square_oracle(int n) {
  unsigned __int128 prod = 1;
  unsigned __int128 f = 1;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) f *= static_cast<unsigned>(i - 1);
    prod *= f;
  }
  return to_decimal(prod * prod);
}

oracle::LongPoly as_poly(const hpt::CouplingPolynomial& p) { return oracle::LongPoly{p.coefficients}; }

// Endpoint conditions checked with independent polynomial derivatives.
double oracle_residual(const hpt::CouplingPolynomial& p, const BoundaryData& y) {
  const oracle::LongPoly q = as_poly(p);
  double worst = 0.0;
  for (int k = 0; k < y.n(); ++k) {
    const oracle::LongPoly d = q.derivative(k);
    const double want0 = p.kind == CouplingKind::zeta ? y.y[k] : (k == 0 ? -1.0 : 0.0);
    const double want1 = p.kind == CouplingKind::zeta ? (k == 0 ? 1.0 : 0.0) : y.y[k];
    worst = std::max({worst, static_cast<double>(std::abs(d(0.0L) - want0)),
                      static_cast<double>(std::abs(d(1.0L) - want1))});
  }
  return worst;
}

}  // namespace

TEST(CoefficientMatrix, DeterminantMatchesFactorialProduct) {
  for (int n = 2; n <= hpt::kHermiteMaxOrder; ++n) {
    EXPECT_EQ(hpt::coefficient_determinant(n), factorial_square_oracle(n)) << "n=" << n;
    EXPECT_EQ(hpt::factorial_product_squared(n), factorial_square_oracle(n));
  }
  EXPECT_EQ(hpt::coefficient_determinant(2), "1");
  EXPECT_EQ(hpt::coefficient_determinant(3), "4");
}

TEST(CoefficientMatrix, BlockStructure) {
  const auto a = hpt::coefficient_matrix(3);
  ASSERT_EQ(a.size(), 6u);
  EXPECT_EQ(a[0][0], 1.0);
  EXPECT_EQ(a[1][1], 1.0);
  EXPECT_EQ(a[2][2], 2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) EXPECT_EQ(a[i][j], 0.0);
  const auto c2 = hpt::coupling_block(2);
  EXPECT_EQ(c2, (hpt::Matrix{{1.0, 1.0}, {2.0, 3.0}}));
}

TEST(CoefficientMatrix, BinomialBlockHasUnitDeterminant) {
  for (int n = 2; n <= hpt::kHermiteMaxOrder; ++n) EXPECT_EQ(hpt::exact_determinant(hpt::binomial_block(n)), "1");
}

TEST(CoefficientMatrix, ExactDeterminantSmallCases) {
  EXPECT_EQ(hpt::exact_determinant({{0.0, 1.0}, {1.0, 0.0}}), "-1");
  EXPECT_EQ(hpt::exact_determinant({{2.0, 4.0}, {1.0, 2.0}}), "0");
  EXPECT_THROW(hpt::exact_determinant({{0.5}}), std::invalid_argument);
}

TEST(CoefficientMatrix, OrderRange) {
  EXPECT_THROW(hpt::coefficient_matrix(1), std::invalid_argument);
  EXPECT_THROW(hpt::coefficient_matrix(hpt::kHermiteMaxOrder + 1), std::invalid_argument);
}

TEST(Zeta, ConstantForUnitData) {
  const auto p = hpt::solve_zeta(BoundaryData{{1.0, 0.0}});
  EXPECT_NEAR(p.coefficients[0], 1.0, 1e-14);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(p.coefficients[i], 0.0, 1e-14);
}

TEST(Zeta, CubicStep) {
  const auto p = hpt::solve_zeta(BoundaryData{{-1.0, 0.0}});
  const std::vector<double> want{-1.0, 0.0, 6.0, -4.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(p.coefficients[i], want[i], 1e-12);
}

TEST(Zeta, QuinticFromZeroData) {
  const BoundaryData y{{0.0, 0.0, 0.0}};
  const auto p = hpt::solve_zeta(y);
  const std::vector<double> want{0.0, 0.0, 0.0, 10.0, -15.0, 6.0};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p.coefficients[i], want[i], 1e-11);
  EXPECT_LT(oracle_residual(p, y), 1e-10);
}

TEST(Eta, ConstantAndMirror) {
  const auto c = hpt::solve_eta(BoundaryData{{-1.0, 0.0}});
  EXPECT_NEAR(c.coefficients[0], -1.0, 1e-14);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(c.coefficients[i], 0.0, 1e-14);
  const auto q = hpt::solve_eta(BoundaryData{{1.0, 0.0}});
  const std::vector<double> want{-1.0, 0.0, 6.0, -4.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(q.coefficients[i], want[i], 1e-12);
  EXPECT_EQ(q.kind, CouplingKind::eta);
}

TEST(Eta, UnitDataOrderThree) {
  const auto y = BoundaryData::unit(3);
  const auto q = hpt::solve_eta(y);
  EXPECT_LT(oracle_residual(q, y), 1e-9);
  EXPECT_NEAR(hpt::eval_poly(q, 0.0), -1.0, 1e-12);
  EXPECT_NEAR(hpt::eval_poly(q, 1.0), 1.0, 1e-12);
}

TEST(Hermite, RandomDataSatisfiesEndpointConditions) {
  oracle::Rng rng(99);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 30; ++t) {
      const BoundaryData y{rng.vector(static_cast<std::size_t>(n), -2.0, 2.0)};
      for (const auto& p : {hpt::solve_zeta(y), hpt::solve_eta(y)}) {
        EXPECT_LT(oracle_residual(p, y), 1e-9) << "n=" << n;
        EXPECT_LT(hpt::endpoint_residual(p, y), 1e-9);
      }
    }
  }
}

TEST(Hermite, ReflectionAgreesWithDirectSolve) {
  oracle::Rng rng(7);
  for (int n = 2; n <= hpt::kHermiteMaxOrder; ++n) {
    const BoundaryData y{rng.vector(static_cast<std::size_t>(n), -1.0, 1.0)};
    const auto a = hpt::solve_eta(y);
    const auto b = hpt::solve_eta_direct(y);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
      EXPECT_NEAR(a.coefficients[i], b.coefficients[i], 1e-8 * (1.0 + std::abs(b.coefficients[i])));
  }
}

TEST(Hermite, PivotingOrdersAgree) {
  oracle::Rng rng(8);
  for (int n = 2; n <= 6; ++n) {
    const BoundaryData y{rng.vector(static_cast<std::size_t>(n), -1.0, 1.0)};
    const auto a = hpt::solve_zeta(y, hpt::Pivoting::partial);
    const auto b = hpt::solve_zeta(y, hpt::Pivoting::complete);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) EXPECT_NEAR(a.coefficients[i], b.coefficients[i], 1e-10);
  }
}

TEST(Hermite, CoefficientsLipschitzInData) {
  oracle::Rng rng(12);
  for (int n = 2; n <= 5; ++n) {
    const double K = hpt::continuity_constant(n);
    EXPECT_TRUE(std::isfinite(K));
    for (int t = 0; t < 20; ++t) {
      const BoundaryData y{rng.vector(static_cast<std::size_t>(n), -1.0, 1.0)};
      BoundaryData z = y;
      double dy = 0.0;
      for (double& v : z.y) {
        const double step = rng.uniform(-1e-2, 1e-2);
        v += step;
        dy = std::max(dy, std::abs(step));
      }
      const auto a = hpt::solve_zeta(y);
      const auto b = hpt::solve_zeta(z);
      double dc = 0.0;
      for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        dc = std::max(dc, static_cast<double>(std::abs(a.coefficients[i] - b.coefficients[i])));
      EXPECT_LE(dc, K * dy * (1.0 + 1e-9));
    }
  }
}

TEST(EvalPoly, Derivatives) {
  const hpt::CouplingPolynomial constant{{3.0, 0.0, 0.0, 0.0}, CouplingKind::zeta};
  EXPECT_EQ(hpt::eval_poly(constant, 0.4, 1), 0.0);
  const hpt::CouplingPolynomial step{{-1.0, 0.0, 6.0, -4.0}, CouplingKind::zeta};
  EXPECT_NEAR(hpt::eval_poly(step, 1.0, 1), 0.0, 1e-14);
  const hpt::CouplingPolynomial cube{{0.0, 0.0, 0.0, 1.0}, CouplingKind::zeta};
  EXPECT_DOUBLE_EQ(hpt::eval_poly(cube, 0.7, 3), 6.0);
  EXPECT_EQ(hpt::eval_poly(cube, 0.7, 4), 0.0);
  EXPECT_THROW(hpt::eval_poly(cube, 0.7, -1), std::invalid_argument);
}

TEST(CouplingEnergy, ZeroAtUnitDataForAnyLambda) {
  const auto w = hpt::make_quartic();
  for (int n = 2; n <= 6; ++n)
    for (double lam : {0.0, 0.5, 3.0}) EXPECT_EQ(hpt::coupling_energy_upper_bound(BoundaryData::unit(n), lam, w, 201, CouplingKind::zeta), 0.0);
  EXPECT_EQ(hpt::coupling_energy_upper_bound(BoundaryData::unit(3, -1.0), 2.0, w, 201, CouplingKind::eta), 0.0);
}

TEST(CouplingEnergy, ContinuousAtUnitData) {
  const auto w = hpt::make_quartic();
  double prev = 1e300;
  for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double e = hpt::coupling_energy_upper_bound(BoundaryData{{1.0 + d, 0.0}}, 0.0, w, 401, CouplingKind::zeta);
    EXPECT_GT(e, 0.0);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(CouplingEnergy, CubicStepMatchesSymbolicIntegral) {
  const oracle::Poly p{{-1.0, 0.0, 6.0, -4.0}};
  const double symbolic = oracle::quartic_of(p).integral(0.0, 1.0) + (p.derivative(2) * p.derivative(2)).integral(0.0, 1.0);
  EXPECT_NEAR(symbolic, 242184.0 / 5005.0, 1e-11);
  const double e = hpt::coupling_energy_upper_bound(BoundaryData{{-1.0, 0.0}}, 0.0, hpt::make_quartic(), 401,
                                                    CouplingKind::zeta);
  EXPECT_NEAR(e, symbolic, 1e-8 * symbolic);
}

TEST(CouplingKindNames, RoundTrip) {
  EXPECT_EQ(hpt::coupling_kind_from_string(hpt::to_string(CouplingKind::eta)), CouplingKind::eta);
  EXPECT_EQ(hpt::coupling_kind_from_string("zeta"), CouplingKind::zeta);
  EXPECT_THROW(hpt::coupling_kind_from_string("xi"), std::invalid_argument);
}

TEST(BoundaryDataTest, Validation) {
  EXPECT_THROW(BoundaryData{{1.0}}.validate(), std::invalid_argument);
  EXPECT_THROW((BoundaryData{{1.0, INFINITY}}.validate()), std::invalid_argument);
  EXPECT_THROW(hpt::solve_zeta(BoundaryData{std::vector<double>(9, 0.0)}), std::invalid_argument);
}
