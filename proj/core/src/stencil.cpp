#include "hpt/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hpt {

std::vector<double> fd_weights(double z, std::span<const double> nodes, int k) {
  const std::size_t n = nodes.size();
  if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (n <= static_cast<std::size_t>(k))
    throw std::invalid_argument("need more than k nodes for a k-th derivative stencil");

  const auto m = static_cast<std::size_t>(k);
  // c[j * (m + 1) + s]: weight of node j for the s-th derivative.
  std::vector<double> c(n * (m + 1), 0.0);
  auto at = [&](std::size_t j, std::size_t s) -> double& { return c[j * (m + 1) + s]; };

  double c1 = 1.0;
  double c4 = nodes[0] - z;
  at(0, 0) = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t s = mn; s >= 1; --s)
          at(i, s) = c1 * (static_cast<double>(s) * at(i - 1, s - 1) - c5 * at(i - 1, s)) / c2;
        at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
      }
      for (std::size_t s = mn; s >= 1; --s)
        at(j, s) = (c4 * at(j, s) - static_cast<double>(s) * at(j, s - 1)) / c3;
      at(j, 0) = c4 * at(j, 0) / c3;
    }
    c1 = c2;
  }

  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = at(j, m);
  return w;
}

Placement staggered_placement(int order) {
  return order % 2 == 0 ? Placement::nodes : Placement::midpoints;
}

namespace {

std::size_t interior_width(int order, int accuracy, Placement placement) {
  if (order == 0 && placement == Placement::nodes) return 1;
  auto width = static_cast<std::size_t>(order + accuracy - 1);
  const bool want_odd = placement == Placement::nodes;
  if ((width % 2 == 1) != want_odd) ++width;
  return width;
}

std::size_t boundary_width(int order, int accuracy) {
  return order == 0 ? 1 : static_cast<std::size_t>(order + accuracy);
}

}  // namespace

std::size_t DiffOperator::min_points(int order, int accuracy) {
  return std::max<std::size_t>(2, boundary_width(order, accuracy));
}

DiffOperator::DiffOperator(const Grid& grid, int order, Placement placement, int accuracy)
    : grid_(grid), order_(order), placement_(placement) {
  if (order < 0 || order > kMaxDerivativeOrder)
    throw std::invalid_argument("derivative order " + std::to_string(order) +
                                " outside supported range 0.." +
                                std::to_string(kMaxDerivativeOrder));
  if (accuracy < 2 || accuracy % 2 != 0)
    throw std::invalid_argument("stencil accuracy must be an even integer >= 2");

  const std::size_t n = grid.size();
  const std::size_t needed = min_points(order, accuracy);
  if (n < needed)
    throw std::invalid_argument("grid has " + std::to_string(n) + " points; a derivative of order " +
                                std::to_string(order) + " needs at least " +
                                std::to_string(needed) + " points");

  const std::size_t s_int = interior_width(order, accuracy, placement);
  std::size_t s_bnd = boundary_width(order, accuracy);
  if (order == 0 && placement == Placement::midpoints) s_bnd = std::min<std::size_t>(n, 4);

  const std::size_t row_count = placement == Placement::nodes ? n : n - 1;
  const double scale = std::pow(grid.spacing(), -order);

  starts_.reserve(row_count);
  offsets_.reserve(row_count + 1);
  offsets_.push_back(0);
  std::vector<double> local;

  for (std::size_t r = 0; r < row_count; ++r) {
    const double z = placement == Placement::nodes ? static_cast<double>(r)
                                                   : static_cast<double>(r) + 0.5;
    const double centred = z - 0.5 * static_cast<double>(s_int - 1);
    std::size_t start = 0;
    std::size_t width = s_int;
    if (centred >= 0.0 && centred + static_cast<double>(s_int) <= static_cast<double>(n)) {
      start = static_cast<std::size_t>(std::lround(centred));
    } else {
      width = s_bnd;
      const double ideal = std::floor(z - 0.5 * static_cast<double>(s_bnd - 1) + 0.5);
      start = static_cast<std::size_t>(
          std::clamp(ideal, 0.0, static_cast<double>(n - s_bnd)));
    }
    local.resize(width);
    for (std::size_t j = 0; j < width; ++j) local[j] = static_cast<double>(start + j);
    auto w = fd_weights(z, local, order);
    for (double& v : w) v *= scale;
    starts_.push_back(start);
    weights_.insert(weights_.end(), w.begin(), w.end());
    offsets_.push_back(weights_.size());
    max_width_ = std::max(max_width_, width);
  }
}

double DiffOperator::location(std::size_t r) const {
  const double base = grid_.a() + static_cast<double>(r) * grid_.spacing();
  return placement_ == Placement::nodes ? base : base + 0.5 * grid_.spacing();
}

std::span<const double> DiffOperator::row_weights(std::size_t r) const {
  return std::span<const double>(weights_).subspan(offsets_[r], offsets_[r + 1] - offsets_[r]);
}

void DiffOperator::apply(std::span<const double> u, std::span<double> out) const {
  if (u.size() != cols() || out.size() != rows())
    throw std::invalid_argument("DiffOperator::apply size mismatch");
  for (std::size_t r = 0; r < rows(); ++r) {
    const std::size_t begin = offsets_[r];
    const std::size_t end = offsets_[r + 1];
    const double* ur = u.data() + starts_[r];
    // Weights of a derivative sum to zero, so differences against the first
    // sample give the same value and are exactly zero on constants.
    const double base = order_ > 0 ? ur[0] : 0.0;
    double acc = 0.0;
    for (std::size_t j = begin; j < end; ++j) acc += weights_[j] * (ur[j - begin] - base);
    out[r] = acc;
  }
}

std::vector<double> DiffOperator::apply(std::span<const double> u) const {
  std::vector<double> out(rows());
  apply(u, out);
  return out;
}

void DiffOperator::apply_transpose_add(std::span<const double> r, std::span<double> out,
                                       double scale) const {
  if (r.size() != rows() || out.size() != cols())
    throw std::invalid_argument("DiffOperator::apply_transpose_add size mismatch");
  for (std::size_t row = 0; row < rows(); ++row) {
    const double coeff = scale * r[row];
    if (coeff == 0.0) continue;
    const std::size_t begin = offsets_[row];
    const std::size_t end = offsets_[row + 1];
    double* o = out.data() + starts_[row];
    for (std::size_t j = begin; j < end; ++j) o[j - begin] += coeff * weights_[j];
  }
}

std::vector<double> placement_weights(const Grid& grid, Placement placement, QuadratureRule rule) {
  if (placement == Placement::nodes) return quadrature_weights(grid, rule);
  return std::vector<double>(grid.size() - 1, grid.spacing());
}

Field derivative(const Field& f, int k) {
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  const DiffOperator d(f.grid(), k, Placement::nodes);
  return Field(f.grid(), d.apply(f.values()));
}

double SampledDerivative::lp_norm(double p) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(sum, 1.0 / p);
}

double SampledDerivative::squared_integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i] * values[i];
  return sum;
}

SampledDerivative sampled_derivative(const Field& f, int k, QuadratureRule rule) {
  const Placement placement = staggered_placement(k);
  SampledDerivative out;
  out.weights = placement_weights(f.grid(), placement, rule);
  if (k == 0) {
    out.values.assign(f.values().begin(), f.values().end());
  } else {
    out.values = DiffOperator(f.grid(), k, placement).apply(f.values());
  }
  return out;
}

}  // namespace hpt
