#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpt/grid.hpp"
#include "hpt/lbfgs.hpp"
#include "hpt/potential.hpp"

namespace hpt {

/// Fields whose int (u^(n-1))^2 is at or below this are rejected by quotient().
inline constexpr double kDegenerateDenominator = 1e-12;

struct QuotientResult {
  double value = 0.0;
  double potential_part = 0.0;  // |I|^-(2n-2) int W(u)
  double highest_part = 0.0;    // |I|^2 int (u^(n))^2
  double denominator = 0.0;     // int (u^(n-1))^2
  Field argmin_field{Grid(0.0, 1.0, 2)};
};

/// Q[u] = (|I|^-(2n-2) int W(u) + |I|^2 int (u^(n))^2) / int (u^(n-1))^2.
/// Throws std::domain_error("quotient undefined ...") for a degenerate denominator.
QuotientResult quotient(const Field& u, int n, const DoubleWell& w);

/// (int W(u) + int (u^(n))^2) / int (u^(n-1))^2 on a union of unit intervals,
/// i.e. the sum of the unit-interval inequalities over the subdivision.
double union_quotient(const Field& u, int n, const DoubleWell& w);

struct LambdaOptions {
  std::size_t starts = 16;
  std::size_t num_points = 501;
  std::uint64_t seed = 1;
  LbfgsOptions lbfgs{.max_iterations = 3000, .gradient_tolerance = 1e-9};
  unsigned threads = 0;
};

struct QuotientRun {
  std::string start;
  double initial = 0.0;
  double value = 0.0;
  LbfgsStatus status = LbfgsStatus::max_iterations;
  int iterations = 0;
  std::string error;  // set when the start was degenerate or the run failed
};

struct LambdaEstimate {
  /// Smallest quotient reached; an upper bound for the critical constant.
  double lambda_hat = 0.0;
  QuotientResult argmin;
  std::size_t best_start = 0;
  std::vector<QuotientRun> runs;
};

/// Start i of the multi-start ensemble on (0, 1). The sequence is fixed per
/// seed, so a larger ensemble always contains a smaller one:
///  0 linear ramp, 1 tanh ramp, then cycling through A sin(k pi x) + c,
///  a seeded random trigonometric sum and a seeded random tanh ramp.
std::pair<std::string, Field> quotient_start(int n, std::size_t index, std::uint64_t seed,
                                             const Grid& grid);

/// Minimizes Q over fields on (0, 1) from opts.starts starts. Throws
/// std::runtime_error with per-start diagnostics if every start fails.
LambdaEstimate estimate_lambda_n(int n, const DoubleWell& w, const LambdaOptions& opts = {});

struct SubcriticalOptions {
  std::uint64_t seed = 7;
  std::size_t num_points = 401;
  /// Every fourth ensemble field lives on (0, K), K ~ U{2..max_union}, and is
  /// tested with union_quotient; 0 disables unions.
  int max_union = 4;
  /// Tested in addition to the ensemble (typically the argmin of estimate_lambda_n).
  std::optional<Field> witness;
  unsigned threads = 0;
};

struct SubcriticalReport {
  double lam = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_degenerate = 0;
  std::size_t violations = 0;
  double min_quotient = 0.0;
  std::string min_description;
  bool witness_checked = false;
  bool witness_violates = false;
  double witness_quotient = 0.0;
};

/// Checks Q[u] >= lam over a seeded ensemble (plus the witness, if any).
SubcriticalReport verify_subcritical(int n, double lam, std::size_t ensemble_size, const DoubleWell& w,
                                     const SubcriticalOptions& opts = {});

}  // namespace hpt
