#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace hpt {

/// Uniform grid on [a, b] with num_points nodes x_i = a + i h.
class Grid {
 public:
  Grid(double a, double b, std::size_t num_points);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  std::size_t size() const { return num_points_; }
  double spacing() const { return h_; }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  /// Smallest grid on [a, b] with at least points_per_unit nodes per unit
  /// length (and at least min_points in total).
  static Grid with_density(double a, double b, double points_per_unit, std::size_t min_points = 2);

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t num_points_;
  double h_;
};

/// Sampled function on a Grid. Values are always finite.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);
  explicit Field(Grid grid, double constant = 0.0);

  static Field sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Same values placed on a translated/stretched copy of the grid.
  Field on_interval(double a, double b) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

enum class QuadratureRule { trapezoid, simpson };

/// Node weights of the composite rule. Simpson needs an odd number of nodes.
std::vector<double> quadrature_weights(const Grid& grid, QuadratureRule rule = QuadratureRule::trapezoid);

double integrate(const Field& f, QuadratureRule rule = QuadratureRule::trapezoid);

/// Piecewise cubic (local four-point Lagrange) interpolant of the samples at x.
/// Points outside [a, b] are clamped to the nearest endpoint value.
double interpolate(const Field& f, double x);

/// Piecewise cubic interpolation onto a grid over the same interval.
Field resample(const Field& f, std::size_t new_num_points);

/// Two-column CSV "x,value" with 17 significant digits.
void write_csv(std::ostream& out, const Field& f);
Field read_csv(std::istream& in);

}  // namespace hpt
