#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hpt/energy.hpp"
#include "hpt/grid.hpp"
#include "hpt/potential.hpp"

namespace hpt {

/// Exponents of the interval Gagliardo-Nirenberg inequality
///   ||u^(j)||_p <= C (||u^(m)||_r^theta ||u||_q^(1-theta) + ||u||_q)
/// subject to 1/p = j + theta (1/r - m) + (1 - theta)/q.
struct GNParams {
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  int j = 1;
  int m = 2;
  double theta = 0.5;

  double balance_residual() const;
  /// Throws std::invalid_argument if an exponent is < 1, j, m or theta are
  /// out of range, or the balance residual exceeds 1e-12.
  void validate() const;

  /// p = 2n/(2n-k), r = 2, q = 1, theta = k/n, j = k, m = n.
  static GNParams liminf_family(int n, int k);
};

struct CheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when both vanish, +inf when only rhs does)
  bool pass = true;    // lhs <= rhs (1 + 1e-8)
  /// Smallest constant that would make this field pass; meaning depends on the checker.
  double required_constant = 0.0;
  std::string witness;
};

/// Builds a report from both sides with the shared pass rule.
CheckReport make_report(double lhs, double rhs, std::string witness = {});

/// L^p norm of u^(k) with the functionals' placement and trapezoid weights.
double derivative_norm(const Field& u, int k, double p);

/// 8 (q + 1)^(1/q).
double intlem_constant(double q);

/// ||u'||_p <= C (|I|^(1+1/p-1/r) ||u''||_r + |I|^(-1+1/p-1/q) ||u||_q),
/// C = intlem_constant(q). required_constant = lhs / (bracket).
CheckReport check_intlem(const Field& u, double p, double q, double r);

/// c_probe int (u^(n-1))^2 <= sigma^-(2n-2) int u^2 + sigma^2 int (u^(n))^2.
/// required_constant is the best c for this field, rhs / int (u^(n-1))^2.
/// Throws std::invalid_argument unless 0 < sigma <= |I|.
CheckReport check_nirineq(const Field& u, int n, double sigma, double c_probe);

/// GN inequality with constant c_hat; required_constant is the constant this
/// field needs. Throws std::invalid_argument when gp is unbalanced.
CheckReport check_gagnir_interval(const Field& u, const GNParams& gp, double c_hat);

/// Running maximum of the constant required by check_gagnir_interval.
class GagNirTracker {
 public:
  void add(const CheckReport& report);
  double max_required() const { return max_; }
  std::size_t count() const { return history_.size(); }
  /// True when the maximum over all samples exceeds ten times the maximum over
  /// the first half, i.e. the constant keeps growing as samples are added.
  bool unbounded_growth() const;
  const std::string& worst_witness() const { return witness_; }

 private:
  std::vector<double> history_;
  double max_ = 0.0;
  std::string witness_;
};

/// ||u^(j)||_r <= ||u^(m)||_r + C_probe ||u||_q.
/// required_constant = max(0, lhs - ||u^(m)||_r) / ||u||_q.
CheckReport check_abstr(const Field& u, int j, int m, double q, double r, double c_probe);

/// (1 - lambda/lam_hat - delta) G^{0,n}[u] <= G^{lambda,n}[u].
/// Throws std::invalid_argument unless 0 <= lambda <= lam_hat / 2 and 0 < delta < 1.
CheckReport check_lower_bound_lemma(const Field& u, const EnergyParams& p, double lam_hat, double delta,
                                    const DoubleWell& w);

}  // namespace hpt
