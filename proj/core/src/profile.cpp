#include "hpt/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "descent.hpp"
#include "hpt/energy.hpp"
#include "hpt/hermite.hpp"
#include "hpt/parallel.hpp"
#include "hpt/stencil.hpp"

namespace hpt {

void ProfileProblem::validate() const {
  if (n < 1) throw std::invalid_argument("profile order n must be >= 1");
  if (n == 1 && lam != 0.0)
    throw std::invalid_argument("n = 1 is a calibration mode and requires lambda = 0");
  if (!(truncation_T > 0.0) || !std::isfinite(truncation_T))
    throw std::invalid_argument("truncation T must be positive");
  if (!std::isfinite(lam)) throw std::invalid_argument("lambda must be finite");
  const std::size_t needed = 2 * clamp_width() + DiffOperator::min_points(n);
  if (num_points < needed)
    throw std::invalid_argument("profile grid needs at least " + std::to_string(needed) + " points");
}

std::size_t ProfileProblem::clamp_width() const {
  return static_cast<std::size_t>(n + kDefaultAccuracy);
}

namespace {

std::vector<bool> clamp_mask(const ProfileProblem& p) {
  std::vector<bool> fixed(p.num_points, false);
  const std::size_t s = p.clamp_width();
  for (std::size_t i = 0; i < s; ++i) {
    fixed[i] = true;
    fixed[p.num_points - 1 - i] = true;
  }
  return fixed;
}

void apply_clamp(const ProfileProblem& p, std::span<double> v) {
  const std::size_t s = p.clamp_width();
  for (std::size_t i = 0; i < s; ++i) {
    v[i] = -1.0;
    v[v.size() - 1 - i] = 1.0;
  }
}

Field hermite_step(const Grid& g, int n, double half_width) {
  const CouplingPolynomial z = solve_zeta(BoundaryData::unit(std::max(n, 2), -1.0));
  return Field::sample(g, [&](double x) {
    const double t = (x + half_width) / (2.0 * half_width);
    if (t <= 0.0) return -1.0;
    if (t >= 1.0) return 1.0;
    return eval_poly(z, t);
  });
}

}  // namespace

double profile_energy(const ProfileProblem& p, const Field& f) {
  p.validate();
  const DiscreteFunctional functional(f.grid(), p.n, p.potential);
  return functional.breakdown(f.values(), TermWeights{1.0, p.lam, 1.0}).total;
}

std::vector<std::pair<std::string, Field>> profile_starts(const ProfileProblem& p,
                                                          const ProfileOptions& opts) {
  p.validate();
  const Grid g = p.grid();
  std::vector<std::pair<std::string, Field>> starts;
  for (double sigma : opts.tanh_widths) {
    std::ostringstream name;
    name << "tanh(x/" << sigma << ")";
    starts.emplace_back(name.str(), Field::sample(g, [sigma](double x) { return std::tanh(x / sigma); }));
  }
  if (opts.hermite_start) {
    std::ostringstream name;
    name << "hermite_step(w=" << opts.hermite_half_width << ")";
    starts.emplace_back(name.str(), hermite_step(g, p.n, opts.hermite_half_width));
  }
  for (std::size_t i = 0; i < opts.extra_starts.size(); ++i) {
    const Field& e = opts.extra_starts[i];
    starts.emplace_back("extra_" + std::to_string(i),
                        Field::sample(g, [&](double x) { return interpolate(e, x); }));
  }
  for (auto& s : starts) apply_clamp(p, s.second.mutable_values());
  return starts;
}

ProfileResult minimize_profile(const ProfileProblem& p, const ProfileOptions& opts) {
  p.validate();
  const Grid g = p.grid();
  const DiscreteFunctional functional(g, p.n, p.potential);
  const TermWeights weights{1.0, p.lam, 1.0};
  detail::Constraints constraints;
  constraints.fixed = clamp_mask(p);
  const auto precondition =
      detail::make_preconditioner(functional, 1.0, p.potential.well_curvature(), constraints);

  Objective objective;
  objective.value_and_gradient = [&](std::span<const double> u, std::span<double> grad) {
    const double v = functional.value_and_gradient(u, weights, grad);
    detail::project(grad, constraints);
    return v;
  };
  objective.precondition = precondition;

  LbfgsOptions lbfgs = opts.lbfgs;
  lbfgs.value_floor = std::max(lbfgs.value_floor, opts.divergence_floor);

  auto starts = profile_starts(p, opts);
  if (starts.empty()) throw std::invalid_argument("minimize_profile needs at least one start");
  std::vector<ProfileRun> runs(starts.size());
  std::vector<std::vector<double>> minimizers(starts.size());

  parallel_for(starts.size(), opts.threads, [&](std::size_t i) {
    const auto values = starts[i].second.values();
    std::vector<double> x0(values.begin(), values.end());
    ProfileRun& run = runs[i];
    run.start = starts[i].first;
    std::vector<double> scratch(x0.size());
    run.initial_energy = functional.value_and_gradient(x0, weights, scratch);
    LbfgsResult r = minimize_lbfgs(objective, std::move(x0), lbfgs);
    run.energy = r.value;
    run.status = r.status;
    run.iterations = r.iterations;
    run.gradient_norm = r.gradient_norm;
    minimizers[i] = std::move(r.x);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].energy < runs[best].energy) best = i;

  ProfileResult result{Field(g, std::move(minimizers[best])), runs[best].energy, false, 0, 0.0, "", "",
                       best, runs};
  const ProfileRun& b = runs[best];
  result.converged = b.status == LbfgsStatus::converged;
  result.iterations = b.iterations;
  result.gradient_norm_final = b.gradient_norm;
  result.status = to_string(b.status);
  if (b.status == LbfgsStatus::diverged)
    result.diagnosis = "supercritical or T too small";
  else if (!result.converged)
    result.diagnosis = "best start stopped with status " + result.status;
  return result;
}

ConstantsEstimate estimate_constants(int n, double lam, const DoubleWell& w,
                                     const ConstantsOptions& opts) {
  ProfileProblem p;
  p.n = n;
  p.truncation_T = opts.truncation_T;
  p.num_points = opts.num_points;
  p.potential = w;

  ConstantsEstimate est;
  p.lam = 0.0;
  est.at_zero = minimize_profile(p, opts.profile);
  est.C_hat_0 = est.at_zero.energy_estimate;
  if (lam == 0.0) {
    est.at_lam = est.at_zero;
  } else {
    p.lam = lam;
    ProfileOptions with_warm = opts.profile;
    with_warm.extra_starts.push_back(est.at_zero.minimizer);
    est.at_lam = minimize_profile(p, with_warm);
  }
  est.C_hat_lam = est.at_lam.energy_estimate;

  if (opts.lambda_hat > 0.0) {
    est.sandwich_checked = true;
    const double slack = opts.sandwich_slack * std::abs(est.C_hat_0);
    est.sandwich_lower = (1.0 - lam / opts.lambda_hat) * est.C_hat_0 - slack;
    est.sandwich_upper = est.C_hat_0 + slack;
    est.sandwich_ok = est.C_hat_lam >= est.sandwich_lower && est.C_hat_lam <= est.sandwich_upper;
  }
  return est;
}

void JumpFunction::validate() const {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("jump function needs a finite interval a < b");
  if (left_value != -1 && left_value != 1) throw std::invalid_argument("left_value must be -1 or +1");
  double prev = a;
  for (double s : jumps) {
    if (!(s > prev)) throw std::invalid_argument("jumps must be strictly increasing inside (a, b)");
    prev = s;
  }
  if (!jumps.empty() && !(jumps.back() < b))
    throw std::invalid_argument("jumps must lie strictly inside (a, b)");
}

int JumpFunction::value_on(std::size_t piece) const {
  return piece % 2 == 0 ? left_value : -left_value;
}

double JumpFunction::operator()(double x) const {
  const auto it = std::upper_bound(jumps.begin(), jumps.end(), x);
  return value_on(static_cast<std::size_t>(it - jumps.begin()));
}

double JumpFunction::delta0() const {
  double d = b - a;
  double prev = a;
  for (double s : jumps) {
    d = std::min(d, s - prev);
    prev = s;
  }
  return std::min(d, b - prev);
}

Field build_recovery(const JumpFunction& u, const Field& profile, double eps,
                     double points_per_epsilon) {
  u.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double T = std::max(std::abs(profile.grid().a()), std::abs(profile.grid().b()));
  const double d0 = u.delta0();
  if (!(eps * T < 0.5 * d0)) {
    std::ostringstream msg;
    msg << "eps = " << eps << " too large: need eps * T = " << eps * T << " < delta0 / 2 = " << 0.5 * d0
        << " (delta0 = min jump spacing including the endpoints)";
    throw std::invalid_argument(msg.str());
  }
  const Grid g = Grid::with_density(u.a, u.b, points_per_epsilon / eps, 2);
  const double lo = profile.grid().a();
  const double hi = profile.grid().b();
  auto f = [&](double t) {
    if (t <= lo) return -1.0;
    if (t >= hi) return 1.0;
    return interpolate(profile, t);
  };
  return Field::sample(g, [&](double x) {
    if (!u.jumps.empty()) {
      const auto it = std::lower_bound(u.jumps.begin(), u.jumps.end(), x);
      std::size_t nearest = static_cast<std::size_t>(it - u.jumps.begin());
      if (nearest == u.jumps.size() ||
          (nearest > 0 && x - u.jumps[nearest - 1] < u.jumps[nearest] - x))
        --nearest;
      const double s = u.jumps[nearest];
      if (std::abs(x - s) < eps * T) {
        const bool upward = u.value_on(nearest) == -1;
        return upward ? f((x - s) / eps) : f(-(x - s) / eps);
      }
    }
    return u(x);
  });
}

}  // namespace hpt
