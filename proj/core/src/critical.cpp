#include "hpt/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "descent.hpp"
#include "hpt/energy.hpp"
#include "hpt/ensemble.hpp"
#include "hpt/parallel.hpp"

namespace hpt {

namespace {

void check_order(int n) {
  if (n < 2) throw std::invalid_argument("quotient order n must be >= 2, got " + std::to_string(n));
}

std::string degenerate_message(double denominator) {
  std::ostringstream msg;
  msg << "quotient undefined: int (u^(n-1))^2 = " << denominator << " <= " << kDegenerateDenominator;
  return msg.str();
}

}  // namespace

QuotientResult quotient(const Field& u, int n, const DoubleWell& w) {
  check_order(n);
  const DiscreteFunctional f(u.grid(), n, w);
  const RawIntegrals raw = f.integrals(u.values());
  if (!(raw.lower > kDegenerateDenominator)) throw std::domain_error(degenerate_message(raw.lower));
  const double len = u.grid().length();
  QuotientResult r{0.0, std::pow(len, -(2.0 * n - 2.0)) * raw.potential, len * len * raw.highest,
                   raw.lower, u};
  r.value = (r.potential_part + r.highest_part) / r.denominator;
  return r;
}

double union_quotient(const Field& u, int n, const DoubleWell& w) {
  check_order(n);
  const DiscreteFunctional f(u.grid(), n, w);
  const RawIntegrals raw = f.integrals(u.values());
  if (!(raw.lower > kDegenerateDenominator)) throw std::domain_error(degenerate_message(raw.lower));
  return (raw.potential + raw.highest) / raw.lower;
}

std::pair<std::string, Field> quotient_start(int n, std::size_t index, std::uint64_t seed,
                                             const Grid& grid) {
  if (index == 0) {
    return {"ramp 1.5 (2x-1)^(n-1)",
            Field::sample(grid, [n](double x) { return 1.5 * std::pow(2.0 * x - 1.0, n - 1); })};
  }
  if (index == 1) {
    return {"tanh((x-0.5)/0.15)",
            Field::sample(grid, [](double x) { return std::tanh((x - 0.5) / 0.15); })};
  }
  const std::size_t j = index - 2;
  if (j % 3 == 0) {
    const std::size_t r = j / 3;
    const int k = 1 + static_cast<int>(r % 6);
    constexpr double amplitudes[] = {1.0, 0.6, 1.4};
    const double amp = amplitudes[(r / 6) % 3];
    std::ostringstream name;
    name << amp << " sin(" << k << " pi x)";
    return {name.str(), Field::sample(grid, [=](double x) { return amp * std::sin(k * std::numbers::pi * x); })};
  }
  const SmoothSample s = ensemble_sample(seed, index);
  return {s.description, sample_on(s, grid)};
}

LambdaEstimate estimate_lambda_n(int n, const DoubleWell& w, const LambdaOptions& opts) {
  check_order(n);
  if (opts.starts == 0) throw std::invalid_argument("estimate_lambda_n needs at least one start");
  const Grid grid(0.0, 1.0, opts.num_points);
  const DiscreteFunctional functional(grid, n, w);
  const double len = grid.length();
  const double c_potential = std::pow(len, -(2.0 * n - 2.0));
  const double c_highest = len * len;

  Objective objective;
  objective.value_and_gradient = [&](std::span<const double> u, std::span<double> grad) {
    const RawIntegrals raw = functional.integrals(u);
    if (!(raw.lower > kDegenerateDenominator) || !std::isfinite(raw.potential))
      return std::numeric_limits<double>::infinity();
    const double q = (c_potential * raw.potential + c_highest * raw.highest) / raw.lower;
    functional.value_and_gradient(
        u, TermWeights{c_potential / raw.lower, q / raw.lower, c_highest / raw.lower}, grad);
    return q;
  };

  std::vector<QuotientRun> runs(opts.starts);
  std::vector<std::vector<double>> fields(opts.starts);
  parallel_for(opts.starts, opts.threads, [&](std::size_t i) {
    auto [name, start] = quotient_start(n, i, opts.seed, grid);
    QuotientRun& run = runs[i];
    run.start = name;
    const RawIntegrals raw = functional.integrals(start.values());
    if (!(raw.lower > kDegenerateDenominator)) {
      run.error = degenerate_message(raw.lower);
      run.value = std::numeric_limits<double>::infinity();
      return;
    }
    run.initial = (c_potential * raw.potential + c_highest * raw.highest) / raw.lower;
    Objective local = objective;
    local.precondition = detail::make_preconditioner(functional, c_highest / raw.lower,
                                                     c_potential * w.well_curvature() / raw.lower, {});
    try {
      const auto v = start.values();
      LbfgsResult r = minimize_lbfgs(local, std::vector<double>(v.begin(), v.end()), opts.lbfgs);
      run.value = r.value;
      run.status = r.status;
      run.iterations = r.iterations;
      fields[i] = std::move(r.x);
    } catch (const std::exception& e) {
      run.error = e.what();
      run.value = std::numeric_limits<double>::infinity();
    }
  });

  std::size_t best = opts.starts;
  for (std::size_t i = 0; i < opts.starts; ++i)
    if (runs[i].error.empty() && (best == opts.starts || runs[i].value < runs[best].value)) best = i;
  if (best == opts.starts) {
    std::ostringstream msg;
    msg << "estimate_lambda_n: all " << opts.starts << " starts failed";
    for (std::size_t i = 0; i < runs.size(); ++i) msg << "\n  [" << i << "] " << runs[i].start << ": " << runs[i].error;
    throw std::runtime_error(msg.str());
  }

  LambdaEstimate est;
  est.argmin = quotient(Field(grid, std::move(fields[best])), n, w);
  est.lambda_hat = est.argmin.value;
  est.best_start = best;
  est.runs = std::move(runs);
  return est;
}

SubcriticalReport verify_subcritical(int n, double lam, std::size_t ensemble_size, const DoubleWell& w,
                                     const SubcriticalOptions& opts) {
  check_order(n);
  if (!(lam >= 0.0)) throw std::invalid_argument("verify_subcritical needs lam >= 0");
  struct Outcome {
    double q = std::numeric_limits<double>::infinity();
    bool degenerate = false;
    std::string description;
  };
  std::vector<Outcome> outcomes(ensemble_size);
  parallel_for(ensemble_size, opts.threads, [&](std::size_t i) {
    const SmoothSample s = ensemble_sample(opts.seed, i);
    Outcome& o = outcomes[i];
    try {
      if (opts.max_union >= 2 && i % 4 == 3) {
        const int k = 2 + static_cast<int>(mix_seed(opts.seed ^ 0x5bd1e995ull, i) %
                                           static_cast<std::uint64_t>(opts.max_union - 1));
        const Grid g(0.0, k, (opts.num_points - 1) * static_cast<std::size_t>(k) + 1);
        o.q = union_quotient(sample_on(s, g), n, w);
        o.description = s.description + " on (0," + std::to_string(k) + ")";
      } else {
        o.q = quotient(sample_on(s, Grid(0.0, 1.0, opts.num_points)), n, w).value;
        o.description = s.description;
      }
    } catch (const std::domain_error&) {
      o.degenerate = true;
    }
  });

  SubcriticalReport rep;
  rep.lam = lam;
  rep.min_quotient = std::numeric_limits<double>::infinity();
  for (const Outcome& o : outcomes) {
    if (o.degenerate) {
      ++rep.skipped_degenerate;
      continue;
    }
    ++rep.checked;
    if (o.q < lam) ++rep.violations;
    if (o.q < rep.min_quotient) {
      rep.min_quotient = o.q;
      rep.min_description = o.description;
    }
  }
  if (opts.witness) {
    rep.witness_checked = true;
    rep.witness_quotient = quotient(*opts.witness, n, w).value;
    ++rep.checked;
    if (rep.witness_quotient < lam) {
      rep.witness_violates = true;
      ++rep.violations;
    }
    if (rep.witness_quotient < rep.min_quotient) {
      rep.min_quotient = rep.witness_quotient;
      rep.min_description = "witness";
    }
  }
  return rep;
}

}  // namespace hpt
