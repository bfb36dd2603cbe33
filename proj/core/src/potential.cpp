#include "hpt/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpt {

double DoubleWell::well_curvature() const {
  constexpr double step = 1e-4;
  const double right = (derivative(1.0 + step) - derivative(1.0 - step)) / (2.0 * step);
  const double left = (derivative(-1.0 + step) - derivative(-1.0 - step)) / (2.0 * step);
  const double curvature = 0.5 * (right + left);
  return std::isfinite(curvature) ? std::max(curvature, 2.0 * coercivity_L) : 2.0 * coercivity_L;
}

DoubleWell make_quartic() {
  DoubleWell w;
  w.name = "quartic";
  w.eval = [](double t) {
    const double a = (t - 1.0) * (t + 1.0);
    return a * a;
  };
  w.eval_derivative = [](double t) { return 4.0 * t * t * t - 4.0 * t; };
  w.coercivity_L = 1.0;
  return w;
}

DoubleWell potential_by_name(std::string_view name) {
  if (name == "quartic") return make_quartic();
  throw std::invalid_argument("unknown potential '" + std::string(name) +
                              "' (built-in potentials: quartic)");
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const AssumptionCheck& ValidationReport::find(std::string_view assumption) const {
  for (const auto& c : checks)
    if (c.assumption == assumption) return c;
  throw std::out_of_range("no check named " + std::string(assumption));
}

namespace {

std::vector<double> sample_points(double radius, int samples) {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    t[static_cast<std::size_t>(i)] = -radius + 2.0 * radius * i / (samples - 1);
  return t;
}

bool near_well(double t) { return std::abs(t - 1.0) < 1e-9 || std::abs(t + 1.0) < 1e-9; }

}  // namespace

ValidationReport validate_assumptions(const DoubleWell& w, double range_radius, int samples) {
  if (samples < 100) throw std::invalid_argument("validate_assumptions needs at least 100 samples");
  if (!(range_radius > 0.0)) throw std::invalid_argument("range_radius must be positive");

  const auto ts = sample_points(range_radius, samples);
  const double L = w.coercivity_L;

  AssumptionCheck w1{"W1", true, 0.0, std::numeric_limits<double>::infinity(), "W(t) >= 0"};
  AssumptionCheck w2{"W2", true, 0.0, std::numeric_limits<double>::infinity(),
                     "W(t) = 0 exactly at t = +/-1"};
  AssumptionCheck w3{"W3", true, 0.0, std::numeric_limits<double>::infinity(),
                     "W(t) >= L (t -/+ 1)^2 for +/- t > 0"};
  AssumptionCheck dw{"derivative", true, 0.0, std::numeric_limits<double>::infinity(),
                     "W' matches central difference, step 1e-5"};

  auto record = [](AssumptionCheck& c, double t, double slack) {
    if (slack < c.worst_value) {
      c.worst_value = slack;
      c.worst_point = t;
    }
  };

  for (double t : ts) {
    const double v = w(t);
    record(w1, t, v);

    if (!near_well(t)) record(w2, t, v);

    if (t > 0.0) {
      const double bound = L * (t - 1.0) * (t - 1.0);
      record(w3, t, v - bound + 1e-12 * std::max(1.0, bound));
    } else if (t < 0.0) {
      const double bound = L * (t + 1.0) * (t + 1.0);
      record(w3, t, v - bound + 1e-12 * std::max(1.0, bound));
    }

    constexpr double h = 1e-5;
    const double fd = (w(t + h) - w(t - h)) / (2.0 * h);
    const double exact = w.derivative(t);
    const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
    record(dw, t, 1e-6 - rel);
  }

  w1.pass = w1.worst_value >= 0.0;
  // W2 slack is the smallest W away from the wells; strictly positive required.
  w2.pass = w2.worst_value > 0.0;
  for (double well : {-1.0, 1.0}) {
    const double v = w(well);
    if (v != 0.0) {
      w2.pass = false;
      w2.worst_point = well;
      w2.worst_value = -std::abs(v);
    }
  }
  w3.pass = w3.worst_value >= 0.0;
  dw.pass = dw.worst_value >= 0.0;

  return ValidationReport{{w1, w2, w3, dw}};
}

double estimate_coercivity(const DoubleWell& w, double range_radius, int samples) {
  const auto ts = sample_points(range_radius, samples);
  double best = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    if (t > 0.0 && std::abs(t - 1.0) > 1e-8)
      best = std::min(best, w(t) / ((t - 1.0) * (t - 1.0)));
    else if (t < 0.0 && std::abs(t + 1.0) > 1e-8)
      best = std::min(best, w(t) / ((t + 1.0) * (t + 1.0)));
  }
  return best;
}

}  // namespace hpt
