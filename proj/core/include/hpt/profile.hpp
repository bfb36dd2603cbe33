#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hpt/grid.hpp"
#include "hpt/lbfgs.hpp"
#include "hpt/potential.hpp"

namespace hpt {

/// Optimal-profile problem on the truncated line (-T, T):
///   minimize int W(f) - lam (f^(n-1))^2 + (f^(n))^2 dx
/// over fields equal to -1 near -T and +1 near T.
///
/// n = 1 with lam = 0 is accepted as a calibration mode (the first-order
/// functional whose minimum is int_{-1}^{1} 2 sqrt(W)).
struct ProfileProblem {
  int n = 2;
  double lam = 0.0;
  double truncation_T = 10.0;
  std::size_t num_points = 801;
  DoubleWell potential = make_quartic();

  Grid grid() const { return Grid(-truncation_T, truncation_T, num_points); }
  /// Throws std::invalid_argument for n < 1, n = 1 with lam != 0, T <= 0, or
  /// too few points to hold both clamped bands plus an interior.
  void validate() const;
  /// Number of grid points clamped at each end.
  std::size_t clamp_width() const;
};

struct ProfileOptions {
  LbfgsOptions lbfgs{};
  /// Widths sigma of the tanh(x / sigma) starts.
  std::vector<double> tanh_widths{0.5, 1.0, 2.0};
  /// Also start from the Hermite-smoothed step on [-w, w].
  bool hermite_start = true;
  double hermite_half_width = 2.0;
  /// Extra starts (resampled onto the problem grid); tails are re-clamped.
  std::vector<Field> extra_starts;
  /// Energy below which a run counts as diverged.
  double divergence_floor = -1e4;
  unsigned threads = 0;
};

struct ProfileRun {
  std::string start;
  double initial_energy = 0.0;
  double energy = 0.0;
  LbfgsStatus status = LbfgsStatus::max_iterations;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct ProfileResult {
  Field minimizer{Grid(0.0, 1.0, 2)};
  double energy_estimate = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm_final = 0.0;
  std::string status;
  std::string diagnosis;  // empty unless something went wrong
  std::size_t best_start = 0;
  std::vector<ProfileRun> runs;
};

/// Profile energy of a field on the problem grid (no clamping applied).
double profile_energy(const ProfileProblem& p, const Field& f);

/// The tanh and Hermite starts in the order minimize_profile runs them.
std::vector<std::pair<std::string, Field>> profile_starts(const ProfileProblem& p,
                                                          const ProfileOptions& opts = {});

/// Multi-start quasi-Newton minimization; the best run by (energy, start index)
/// is returned. Diverged runs are reported with the diagnosis
/// "supercritical or T too small".
ProfileResult minimize_profile(const ProfileProblem& p, const ProfileOptions& opts = {});

struct ConstantsOptions {
  double truncation_T = 10.0;
  std::size_t num_points = 801;
  ProfileOptions profile{};
  /// When positive, the sandwich (1 - lam/lambda_hat) C0 <= C_lam <= C0 is checked.
  double lambda_hat = 0.0;
  double sandwich_slack = 0.02;
};

struct ConstantsEstimate {
  double C_hat_0 = 0.0;
  double C_hat_lam = 0.0;
  bool sandwich_checked = false;
  bool sandwich_ok = true;
  double sandwich_lower = 0.0;  // (1 - lam/lambda_hat) C0 - slack C0
  double sandwich_upper = 0.0;  // C0 + slack C0
  ProfileResult at_zero;
  ProfileResult at_lam;
};

/// Estimates C^n (lam = 0) and C^{lam,n}. The lam run is also started from
/// the lam = 0 minimizer, so C_hat_lam <= C_hat_0 whenever lam >= 0.
ConstantsEstimate estimate_constants(int n, double lam, const DoubleWell& w,
                                     const ConstantsOptions& opts = {});

/// Piecewise constant +-1 function on (a, b) with jumps s_1 < ... < s_N.
struct JumpFunction {
  double a = -1.0;
  double b = 1.0;
  std::vector<double> jumps;
  int left_value = -1;

  /// Throws std::invalid_argument unless a < b, jumps strictly increase
  /// inside (a, b) and left_value is +-1.
  void validate() const;
  std::size_t count() const { return jumps.size(); }
  double operator()(double x) const;
  /// Value on (s_i, s_{i+1}), i = 0..N (i = 0 is the left piece).
  int value_on(std::size_t piece) const;
  /// min spacing of a = s_0 < s_1 < ... < s_N < s_{N+1} = b.
  double delta0() const;
};

/// Pastes f((x - s_i)/eps) at upward jumps and f(-(x - s_i)/eps) at downward
/// jumps, with f evaluated by cubic interpolation and extended by +-1 outside
/// its grid; u elsewhere. The result lives on a grid over (a, b) with at
/// least points_per_epsilon nodes per eps. Throws std::invalid_argument if
/// eps T >= delta0 / 2, T being the half-length of the profile grid.
Field build_recovery(const JumpFunction& u, const Field& profile, double eps,
                     double points_per_epsilon = 32.0);

}  // namespace hpt
