#include "hpt/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hpt {

void EnergyParams::validate() const {
  if (n < 2) throw std::invalid_argument("energy order n must be >= 2, got " + std::to_string(n));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive");
  if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
}

TermWeights energy_weights(const EnergyParams& p) {
  return TermWeights{1.0 / p.epsilon, p.lambda * std::pow(p.epsilon, 2 * p.n - 3),
                     std::pow(p.epsilon, 2 * p.n - 1)};
}

DiscreteFunctional::DiscreteFunctional(const Grid& grid, int order, DoubleWell potential,
                                       QuadratureRule rule)
    : grid_(grid),
      order_(order),
      potential_(std::move(potential)),
      lower_(grid, order - 1, staggered_placement(order - 1)),
      highest_(grid, order, staggered_placement(order)),
      node_weights_(quadrature_weights(grid, rule)),
      lower_weights_(placement_weights(grid, staggered_placement(order - 1), rule)),
      highest_weights_(placement_weights(grid, staggered_placement(order), rule)) {
  if (order < 1) throw std::invalid_argument("functional order must be >= 1");
}

namespace {

double weighted_square_sum(std::span<const double> values, std::span<const double> weights) {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i] * values[i];
  return sum;
}

void check_size(std::span<const double> u, const Grid& g) {
  if (u.size() != g.size())
    throw std::invalid_argument("field size " + std::to_string(u.size()) +
                                " does not match grid size " + std::to_string(g.size()));
}

}  // namespace

RawIntegrals DiscreteFunctional::integrals(std::span<const double> u) const {
  check_size(u, grid_);
  RawIntegrals out;
  for (std::size_t i = 0; i < u.size(); ++i) out.potential += node_weights_[i] * potential_(u[i]);
  out.lower = weighted_square_sum(lower_.apply(u), lower_weights_);
  out.highest = weighted_square_sum(highest_.apply(u), highest_weights_);
  return out;
}

void DiscreteFunctional::gradient(std::span<const double> u, const TermWeights& c,
                                  std::span<double> grad) const {
  value_and_gradient(u, c, grad);
}

double DiscreteFunctional::value_and_gradient(std::span<const double> u, const TermWeights& c,
                                              std::span<double> grad) const {
  check_size(u, grid_);
  if (grad.size() != u.size()) throw std::invalid_argument("gradient buffer size mismatch");

  double pot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    pot += node_weights_[i] * potential_(u[i]);
    grad[i] = c.potential * node_weights_[i] * potential_.derivative(u[i]);
  }

  double low = 0.0;
  if (c.lower != 0.0) {
    auto r = lower_.apply(u);
    for (std::size_t i = 0; i < r.size(); ++i) {
      low += lower_weights_[i] * r[i] * r[i];
      r[i] *= lower_weights_[i];
    }
    lower_.apply_transpose_add(r, grad, -2.0 * c.lower);
  }

  double high = 0.0;
  if (c.highest != 0.0) {
    auto r = highest_.apply(u);
    for (std::size_t i = 0; i < r.size(); ++i) {
      high += highest_weights_[i] * r[i] * r[i];
      r[i] *= highest_weights_[i];
    }
    highest_.apply_transpose_add(r, grad, 2.0 * c.highest);
  }

  return c.potential * pot - c.lower * low + c.highest * high;
}

EnergyBreakdown DiscreteFunctional::breakdown(std::span<const double> u, const TermWeights& c) const {
  const RawIntegrals raw = integrals(u);
  EnergyBreakdown b;
  b.potential_term = c.potential * raw.potential;
  b.concave_term = -c.lower * raw.lower;
  b.highest_term = c.highest * raw.highest;
  b.total = b.potential_term + b.concave_term + b.highest_term;
  return b;
}

EnergyBreakdown evaluate(const Field& u, const EnergyParams& p, const DoubleWell& w,
                         QuadratureRule rule) {
  p.validate();
  const DiscreteFunctional functional(u.grid(), p.n, w, rule);
  return functional.breakdown(u.values(), energy_weights(p));
}

double evaluate_rescaled(const Field& u, const EnergyParams& p, const DoubleWell& w,
                         QuadratureRule rule) {
  p.validate();
  const Field stretched = u.on_interval(u.grid().a() / p.epsilon, u.grid().b() / p.epsilon);
  const DiscreteFunctional functional(stretched.grid(), p.n, w, rule);
  return functional.breakdown(stretched.values(), TermWeights{1.0, p.lambda, 1.0}).total;
}

Field gradient(const Field& u, const EnergyParams& p, const DoubleWell& w, QuadratureRule rule) {
  p.validate();
  const DiscreteFunctional functional(u.grid(), p.n, w, rule);
  std::vector<double> g(u.size());
  functional.value_and_gradient(u.values(), energy_weights(p), g);
  return Field(u.grid(), std::move(g));
}

}  // namespace hpt
