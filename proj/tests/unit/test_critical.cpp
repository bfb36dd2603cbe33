#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "hpt/critical.hpp"
#include "hpt/ensemble.hpp"
#include "oracles.hpp"

using hpt::Field;
using hpt::Grid;

namespace {

const hpt::DoubleWell kQuartic = hpt::make_quartic();

const hpt::LambdaEstimate& lambda2() {
  static const hpt::LambdaEstimate e = hpt::estimate_lambda_n(2, kQuartic);
  return e;
}

}  // namespace

TEST(Quotient, LinearFieldSecondOrder) {
  const oracle::Poly x{{0.0, 1.0}};
  const Field u = Field::sample(Grid(0.0, 1.0, 2001), x);
  const auto q = hpt::quotient(u, 2, kQuartic);
  EXPECT_NEAR(q.value, oracle::quartic_of(x).integral(0.0, 1.0), 1e-6);
  EXPECT_NEAR(q.value, 8.0 / 15.0, 1e-6);
  EXPECT_NEAR(q.denominator, 1.0, 1e-12);
  EXPECT_NEAR(q.value, (q.potential_part + q.highest_part) / q.denominator, 1e-15);
}

TEST(Quotient, DegenerateDenominatorThrows) {
  const Field u = Field::sample(Grid(0.0, 1.0, 101), [](double x) { return 0.3 + x; });
  try {
    hpt::quotient(u, 3, kQuartic);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("quotient undefined"), std::string::npos);
  }
  EXPECT_THROW(hpt::quotient(Field(Grid(0.0, 1.0, 101), 0.5), 2, kQuartic), std::domain_error);
}

TEST(Quotient, ScaleInvariance) {
  for (std::size_t i = 0; i < 30; ++i) {
    const Field u = hpt::ensemble_field(17, i, 301);
    for (int n : {2, 3}) {
      const double base = hpt::quotient(u, n, kQuartic).value;
      for (double sigma : {0.5, 2.0, 5.0}) {
        const double scaled = hpt::quotient(u.on_interval(0.0, sigma), n, kQuartic).value;
        EXPECT_LT(oracle::relative_error(scaled, base), 1e-8) << "i=" << i << " n=" << n << " sigma=" << sigma;
      }
    }
  }
}

TEST(Quotient, UnionOfUnitIntervals) {
  // (int_0^2 (x^2 - 1)^2) / int_0^2 1 = (46/15) / 2.
  const Field u = Field::sample(Grid(0.0, 2.0, 4001), [](double x) { return x; });
  EXPECT_NEAR(hpt::union_quotient(u, 2, kQuartic), 23.0 / 15.0, 1e-6);
}

TEST(LambdaN, PositiveUpperBoundAttainedByArgmin) {
  const auto& e = lambda2();
  EXPECT_GT(e.lambda_hat, 0.0);
  EXPECT_EQ(e.runs.size(), 16u);
  EXPECT_NEAR(hpt::quotient(e.argmin.argmin_field, 2, kQuartic).value, e.lambda_hat, 1e-12 * e.lambda_hat);
  for (const auto& run : e.runs)
    if (run.error.empty()) {
      EXPECT_GE(run.value, e.lambda_hat);
    }
}

TEST(LambdaN, MonotoneInEnsembleSize) {
  hpt::LambdaOptions small;
  small.starts = 4;
  const double few = hpt::estimate_lambda_n(2, kQuartic, small).lambda_hat;
  EXPECT_GE(few, lambda2().lambda_hat);
}

TEST(LambdaN, StableUnderRefinement) {
  hpt::LambdaOptions fine;
  fine.starts = 4;
  fine.num_points = 2001;
  const double refined = hpt::estimate_lambda_n(2, kQuartic, fine).lambda_hat;
  const double coarse = lambda2().lambda_hat;
  // Two significant digits.
  EXPECT_LT(std::abs(refined - coarse) / coarse, 0.005);
}

TEST(LambdaN, ThirdOrderPositive) {
  hpt::LambdaOptions opts;
  opts.starts = 6;
  opts.num_points = 301;
  EXPECT_GT(hpt::estimate_lambda_n(3, kQuartic, opts).lambda_hat, 0.0);
}

TEST(LambdaN, StartsAreDeterministic) {
  const Grid g(0.0, 1.0, 101);
  for (std::size_t i = 0; i < 10; ++i) {
    const auto a = hpt::quotient_start(2, i, 3, g);
    const auto b = hpt::quotient_start(2, i, 3, g);
    EXPECT_EQ(a.first, b.first);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(a.second[k], b.second[k]);
  }
}

TEST(Subcritical, ZeroLambdaAlwaysPasses) {
  const auto r = hpt::verify_subcritical(2, 0.0, 100, kQuartic);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.checked + r.skipped_degenerate, 100u);
  EXPECT_GT(r.min_quotient, 0.0);
}

TEST(Subcritical, HalfLambdaHatHasNoViolations) {
  const auto r = hpt::verify_subcritical(2, 0.5 * lambda2().lambda_hat, 200, kQuartic);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GE(r.min_quotient, 0.5 * lambda2().lambda_hat);
}

TEST(Subcritical, WitnessViolatesAboveLambdaHat) {
  hpt::SubcriticalOptions opts;
  opts.witness = lambda2().argmin.argmin_field;
  const auto r = hpt::verify_subcritical(2, 2.0 * lambda2().lambda_hat, 50, kQuartic, opts);
  EXPECT_TRUE(r.witness_checked);
  EXPECT_TRUE(r.witness_violates);
  EXPECT_GE(r.violations, 1u);
}

TEST(Subcritical, SameSeedSameReport) {
  const auto a = hpt::verify_subcritical(3, 0.01, 40, kQuartic);
  const auto b = hpt::verify_subcritical(3, 0.01, 40, kQuartic);
  EXPECT_EQ(a.min_quotient, b.min_quotient);
  EXPECT_EQ(a.min_description, b.min_description);
}
