#include "hpt/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hpt/stencil.hpp"

namespace hpt {

double GNParams::balance_residual() const {
  return 1.0 / p - (j + theta * (1.0 / r - m) + (1.0 - theta) / q);
}

void GNParams::validate() const {
  if (p < 1.0 || q < 1.0 || r < 1.0) throw std::invalid_argument("GN exponents p, q, r must be >= 1");
  if (j < 0 || j >= m) throw std::invalid_argument("GN orders need 0 <= j < m");
  const double lo = static_cast<double>(j) / m;
  if (theta < lo - 1e-15 || theta >= 1.0) throw std::invalid_argument("GN theta must lie in [j/m, 1)");
  const double res = balance_residual();
  if (std::abs(res) > 1e-12) {
    std::ostringstream msg;
    msg << "GN dimension balance violated: residual " << res;
    throw std::invalid_argument(msg.str());
  }
}

GNParams GNParams::liminf_family(int n, int k) {
  if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("liminf family needs 1 <= k < n");
  return GNParams{2.0 * n / (2.0 * n - k), 1.0, 2.0, k, n, static_cast<double>(k) / n};
}

CheckReport make_report(double lhs, double rhs, std::string witness) {
  CheckReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs != 0.0)
    r.ratio = lhs / rhs;
  else
    r.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  r.pass = lhs <= rhs + 1e-8 * std::abs(rhs);
  r.witness = std::move(witness);
  return r;
}

double derivative_norm(const Field& u, int k, double p) {
  return sampled_derivative(u, k).lp_norm(p);
}

double intlem_constant(double q) { return 8.0 * std::pow(q + 1.0, 1.0 / q); }

CheckReport check_intlem(const Field& u, double p, double q, double r) {
  const double len = u.grid().length();
  const double lhs = derivative_norm(u, 1, p);
  const double bracket = std::pow(len, 1.0 + 1.0 / p - 1.0 / r) * derivative_norm(u, 2, r) +
                         std::pow(len, -1.0 + 1.0 / p - 1.0 / q) * derivative_norm(u, 0, q);
  CheckReport rep = make_report(lhs, intlem_constant(q) * bracket);
  rep.required_constant = bracket > 0.0 ? lhs / bracket : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

CheckReport check_nirineq(const Field& u, int n, double sigma, double c_probe) {
  if (n < 2) throw std::invalid_argument("nirineq needs n >= 2");
  if (!(sigma > 0.0) || sigma > u.grid().length())
    throw std::invalid_argument("sigma must satisfy 0 < sigma <= |I|");
  const double lower = sampled_derivative(u, n - 1).squared_integral();
  const double rhs = std::pow(sigma, -(2.0 * n - 2.0)) * sampled_derivative(u, 0).squared_integral() +
                     sigma * sigma * sampled_derivative(u, n).squared_integral();
  CheckReport rep = make_report(c_probe * lower, rhs);
  rep.required_constant = lower > 0.0 ? rhs / lower : std::numeric_limits<double>::infinity();
  return rep;
}

CheckReport check_gagnir_interval(const Field& u, const GNParams& gp, double c_hat) {
  gp.validate();
  const double lhs = derivative_norm(u, gp.j, gp.p);
  const double uq = derivative_norm(u, 0, gp.q);
  const double bracket = std::pow(derivative_norm(u, gp.m, gp.r), gp.theta) * std::pow(uq, 1.0 - gp.theta) + uq;
  CheckReport rep = make_report(lhs, c_hat * bracket);
  rep.required_constant = bracket > 0.0 ? lhs / bracket : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

void GagNirTracker::add(const CheckReport& report) {
  history_.push_back(report.required_constant);
  if (report.required_constant > max_ || history_.size() == 1) {
    max_ = report.required_constant;
    witness_ = report.witness;
  }
}

bool GagNirTracker::unbounded_growth() const {
  if (history_.size() < 2) return false;
  const auto half = history_.begin() + static_cast<std::ptrdiff_t>(history_.size() / 2);
  const double early = *std::max_element(history_.begin(), half);
  return !std::isfinite(max_) || max_ > 10.0 * early;
}

CheckReport check_abstr(const Field& u, int j, int m, double q, double r, double c_probe) {
  if (j < 0 || j >= m) throw std::invalid_argument("abstr needs 0 <= j < m");
  const double lhs = derivative_norm(u, j, r);
  const double top = derivative_norm(u, m, r);
  const double uq = derivative_norm(u, 0, q);
  CheckReport rep = make_report(lhs, top + c_probe * uq);
  const double excess = std::max(0.0, lhs - top);
  rep.required_constant = excess == 0.0 ? 0.0 : (uq > 0.0 ? excess / uq : std::numeric_limits<double>::infinity());
  return rep;
}

CheckReport check_lower_bound_lemma(const Field& u, const EnergyParams& p, double lam_hat, double delta,
                                    const DoubleWell& w) {
  p.validate();
  if (!(lam_hat > 0.0)) throw std::invalid_argument("lam_hat must be positive");
  if (p.lambda < 0.0 || p.lambda > 0.5 * lam_hat)
    throw std::invalid_argument("lower-bound check needs 0 <= lambda <= lam_hat / 2");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  EnergyParams zero = p;
  zero.lambda = 0.0;
  const double g0 = evaluate(u, zero, w).total;
  const double gl = evaluate(u, p, w).total;
  CheckReport rep = make_report((1.0 - p.lambda / lam_hat - delta) * g0, gl);
  rep.required_constant = g0 > 0.0 ? 1.0 - gl / g0 : 0.0;
  return rep;
}

}  // namespace hpt
