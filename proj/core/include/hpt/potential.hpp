#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hpt {

/// A double-well potential with wells at -1 and +1.
///
/// The potential is supplied in closed form together with its derivative and
/// the quadratic coercivity constant L, i.e. W(t) >= L (t -/+ 1)^2 for
/// +/- t > 0. Nothing here is checked on construction; use
/// validate_assumptions() for a sampled check.
struct DoubleWell {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> eval_derivative;
  double coercivity_L = 1.0;

  double operator()(double t) const { return eval(t); }
  double derivative(double t) const { return eval_derivative(t); }

  /// Curvature at the wells, estimated from W' by a central difference.
  /// Floored at 2L, which (W3) guarantees for twice differentiable W.
  double well_curvature() const;
};

/// W(t) = (t-1)^2 (t+1)^2, W'(t) = 4t^3 - 4t, L = 1.
DoubleWell make_quartic();

/// Looks up a built-in potential by name ("quartic").
/// Throws std::invalid_argument for unknown names.
DoubleWell potential_by_name(std::string_view name);

struct AssumptionCheck {
  std::string assumption;  // "W1", "W2", "W3", "derivative"
  bool pass = true;
  double worst_point = 0.0;
  double worst_value = 0.0;  // signed slack at worst_point; negative means violated
  std::string detail;
};

struct ValidationReport {
  std::vector<AssumptionCheck> checks;

  bool all_pass() const;
  const AssumptionCheck& find(std::string_view assumption) const;
};

/// Samples W on [-range_radius, range_radius] and checks (W1)-(W3) plus the
/// consistency of W' against central differences. Violations are reported,
/// not thrown. Requires samples >= 100.
ValidationReport validate_assumptions(const DoubleWell& w, double range_radius = 3.0,
                                      int samples = 10000);

/// Scans inf W(t)/(t-1)^2 over t > 0 and inf W(t)/(t+1)^2 over t < 0 on the
/// sampled window and returns the smaller of the two.
double estimate_coercivity(const DoubleWell& w, double range_radius = 3.0, int samples = 10000);

}  // namespace hpt
