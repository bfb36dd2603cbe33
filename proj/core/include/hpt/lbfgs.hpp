#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hpt {

struct LbfgsOptions {
  int max_iterations = 10000;
  /// Stop when the sup-norm of the gradient drops below this.
  double gradient_tolerance = 1e-8;
  int history = 12;
  /// Abort with LbfgsStatus::diverged once the objective falls below this.
  double value_floor = -std::numeric_limits<double>::infinity();
  int max_line_search_evaluations = 40;
  /// Window length: stop as stalled once the best value has improved by less
  /// than 1e-14 (relative) over this many iterations.
  int stall_iterations = 25;
};

enum class LbfgsStatus { converged, max_iterations, diverged, line_search_failed, stalled };

std::string to_string(LbfgsStatus status);

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;  // sup-norm
  int iterations = 0;
  int evaluations = 0;
  LbfgsStatus status = LbfgsStatus::max_iterations;

  bool converged() const { return status == LbfgsStatus::converged; }
};

/// Objective for minimize_lbfgs.
///
/// value_and_gradient writes the gradient and returns the value; it may
/// return a non-finite value for points outside the domain, which the line
/// search treats as a rejected step. precondition, when set, applies a
/// symmetric positive definite approximation of the inverse Hessian in
/// place. Constraints (fixed entries, linear projections) are the caller's
/// job: both callbacks must keep vectors inside the feasible subspace.
struct Objective {
  std::function<double(std::span<const double>, std::span<double>)> value_and_gradient;
  std::function<void(std::span<double>)> precondition;
};

/// Limited-memory BFGS with a strong Wolfe line search (c1 = 1e-4, c2 = 0.9).
LbfgsResult minimize_lbfgs(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& options = {});

}  // namespace hpt
