#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpt/grid.hpp"

namespace hpt {

/// Highest derivative order the operators are built and tested for.
inline constexpr int kMaxDerivativeOrder = 6;

/// Default interior accuracy order of the stencils.
inline constexpr int kDefaultAccuracy = 4;

/// Finite-difference weights for the k-th derivative at z from arbitrary
/// distinct nodes (Fornberg's recursion).
std::vector<double> fd_weights(double z, std::span<const double> nodes, int k);

/// Where the derivative values live.
///  nodes     - at the grid nodes (N values)
///  midpoints - at the cell midpoints x_i + h/2 (N - 1 values)
enum class Placement { nodes, midpoints };

/// Placement used by the energy-type functionals: even orders on nodes and
/// odd orders on midpoints. Centred odd-order stencils on the nodes cannot
/// see the alternating mode (-1)^i, and the functionals need every term to
/// feel it.
Placement staggered_placement(int order);

/// Sparse k-th derivative operator on a uniform grid.
///
/// Interior rows use the centred stencil with the fewest points giving the
/// requested accuracy; rows whose centred stencil does not fit use the
/// nearest window of order + accuracy nodes. Every row is exact on
/// polynomials of degree < order + accuracy.
class DiffOperator {
 public:
  DiffOperator(const Grid& grid, int order, Placement placement = Placement::nodes,
               int accuracy = kDefaultAccuracy);

  int order() const { return order_; }
  Placement placement() const { return placement_; }
  const Grid& grid() const { return grid_; }
  std::size_t rows() const { return starts_.size(); }
  std::size_t cols() const { return grid_.size(); }
  /// Widest row; the number of nodes an order-k stencil can reach.
  std::size_t max_width() const { return max_width_; }

  /// Position of output row r.
  double location(std::size_t r) const;

  void apply(std::span<const double> u, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> u) const;
  /// out += scale * D^T r
  void apply_transpose_add(std::span<const double> r, std::span<double> out, double scale = 1.0) const;

  std::size_t row_start(std::size_t r) const { return starts_[r]; }
  std::span<const double> row_weights(std::size_t r) const;

  /// Minimum grid size for the given order and accuracy.
  static std::size_t min_points(int order, int accuracy = kDefaultAccuracy);

 private:
  Grid grid_;
  int order_;
  Placement placement_;
  std::size_t max_width_ = 0;
  std::vector<std::size_t> starts_;
  std::vector<std::size_t> offsets_;  // rows()+1 entries into weights_
  std::vector<double> weights_;
};

/// Quadrature weights matching the output locations of an operator:
/// the node rule for Placement::nodes, the midpoint rule for midpoints.
std::vector<double> placement_weights(const Grid& grid, Placement placement,
                                      QuadratureRule rule = QuadratureRule::trapezoid);

/// Discrete k-th derivative on the same grid (node placement).
/// Throws std::invalid_argument if the grid is too small for the stencil.
Field derivative(const Field& f, int k);

/// A derivative sampled together with the quadrature weights of its locations.
struct SampledDerivative {
  std::vector<double> values;
  std::vector<double> weights;

  /// (sum_i w_i |v_i|^p)^(1/p)
  double lp_norm(double p) const;
  double squared_integral() const;
};

/// k-th derivative in the staggered placement used by the functionals; k = 0
/// returns the samples themselves with node weights.
SampledDerivative sampled_derivative(const Field& f, int k,
                                     QuadratureRule rule = QuadratureRule::trapezoid);

}  // namespace hpt
