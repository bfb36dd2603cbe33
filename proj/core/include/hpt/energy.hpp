#pragma once

#include <span>
#include <vector>

#include "hpt/grid.hpp"
#include "hpt/potential.hpp"
#include "hpt/stencil.hpp"

namespace hpt {

/// (n, epsilon, lambda) of the order-n singularly perturbed energy
///   G[u] = int W(u)/eps - lambda eps^(2n-3) (u^(n-1))^2 + eps^(2n-1) (u^(n))^2 dx.
struct EnergyParams {
  int n = 2;
  double epsilon = 1.0;
  double lambda = 0.0;

  /// Throws std::invalid_argument unless n >= 2 and epsilon > 0.
  void validate() const;
};

struct EnergyBreakdown {
  double potential_term = 0.0;  // int W(u) / eps
  double concave_term = 0.0;    // -lambda eps^(2n-3) int (u^(n-1))^2
  double highest_term = 0.0;    // eps^(2n-1) int (u^(n))^2
  double total = 0.0;
};

/// Coefficients of the three integrals:
///   E = potential * P - lower * L + highest * H
/// with P = int W(u), L = int (u^(k-1))^2, H = int (u^(k))^2.
struct TermWeights {
  double potential = 1.0;
  double lower = 0.0;
  double highest = 1.0;
};

struct RawIntegrals {
  double potential = 0.0;
  double lower = 0.0;
  double highest = 0.0;
};

TermWeights energy_weights(const EnergyParams& p);

/// Quadrature-of-stencils discretization of int W(u), int (u^(k-1))^2 and
/// int (u^(k))^2 on a fixed grid, with exact adjoint gradients.
///
/// Order k >= 1 is accepted here (k = 1 gives the first-order functional
/// used for calibration); the public energy functions require k >= 2.
class DiscreteFunctional {
 public:
  DiscreteFunctional(const Grid& grid, int order, DoubleWell potential,
                     QuadratureRule rule = QuadratureRule::trapezoid);

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }
  const DoubleWell& potential() const { return potential_; }
  const DiffOperator& lower_operator() const { return lower_; }
  const DiffOperator& highest_operator() const { return highest_; }
  std::span<const double> node_weights() const { return node_weights_; }
  std::span<const double> lower_weights() const { return lower_weights_; }
  std::span<const double> highest_weights() const { return highest_weights_; }

  RawIntegrals integrals(std::span<const double> u) const;

  /// grad = c.potential dP - c.lower dL + c.highest dH (overwrites grad).
  void gradient(std::span<const double> u, const TermWeights& c, std::span<double> grad) const;

  /// Combined value and gradient in one sweep.
  double value_and_gradient(std::span<const double> u, const TermWeights& c,
                            std::span<double> grad) const;

  EnergyBreakdown breakdown(std::span<const double> u, const TermWeights& c) const;

 private:
  Grid grid_;
  int order_;
  DoubleWell potential_;
  DiffOperator lower_;
  DiffOperator highest_;
  std::vector<double> node_weights_;
  std::vector<double> lower_weights_;
  std::vector<double> highest_weights_;
};

/// Evaluates G on u. Throws std::invalid_argument for invalid params or a grid
/// too coarse for the order-n stencil.
EnergyBreakdown evaluate(const Field& u, const EnergyParams& p, const DoubleWell& w,
                         QuadratureRule rule = QuadratureRule::trapezoid);

/// Same energy computed on the stretched interval I/eps with v(x) = u(eps x):
///   int_{I/eps} W(v) - lambda (v^(n-1))^2 + (v^(n))^2 dx.
double evaluate_rescaled(const Field& u, const EnergyParams& p, const DoubleWell& w,
                         QuadratureRule rule = QuadratureRule::trapezoid);

/// Gradient of the discrete total with respect to the sample values.
Field gradient(const Field& u, const EnergyParams& p, const DoubleWell& w,
               QuadratureRule rule = QuadratureRule::trapezoid);

}  // namespace hpt
