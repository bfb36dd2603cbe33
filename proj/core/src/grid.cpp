#include "hpt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hpt {

Grid::Grid(double a, double b, std::size_t num_points) : a_(a), b_(b), num_points_(num_points) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a))
    throw std::invalid_argument("grid interval must satisfy a < b");
  if (num_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  h_ = (b - a) / static_cast<double>(num_points - 1);
}

double Grid::node(std::size_t i) const {
  if (i + 1 == num_points_) return b_;
  return a_ + static_cast<double>(i) * h_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(num_points_);
  for (std::size_t i = 0; i < num_points_; ++i) x[i] = node(i);
  return x;
}

Grid Grid::with_density(double a, double b, double points_per_unit, std::size_t min_points) {
  const auto cells = static_cast<std::size_t>(std::ceil((b - a) * points_per_unit - 1e-9));
  return Grid(a, b, std::max(cells + 1, min_points));
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_.size()) + " points");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
}

Field::Field(Grid grid, double constant) : grid_(grid), values_(grid.size(), constant) {}

Field Field::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
  return Field(grid, std::move(v));
}

Field Field::on_interval(double a, double b) const {
  return Field(Grid(a, b, grid_.size()), values_);
}

std::vector<double> quadrature_weights(const Grid& grid, QuadratureRule rule) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> w(n, h);
  if (rule == QuadratureRule::trapezoid) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
  }
  if (n % 2 == 0) throw std::invalid_argument("Simpson quadrature needs an odd number of points");
  for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  w.front() = h / 3.0;
  w.back() = h / 3.0;
  return w;
}

double integrate(const Field& f, QuadratureRule rule) {
  const auto w = quadrature_weights(f.grid(), rule);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i];
  return sum;
}

double interpolate(const Field& f, double x) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  if (x <= g.a()) return f[0];
  if (x >= g.b()) return f[n - 1];
  const double s = (x - g.a()) / g.spacing();
  if (n < 4) {
    const auto i = std::min(static_cast<std::size_t>(s), n - 2);
    const double t = s - static_cast<double>(i);
    return (1.0 - t) * f[i] + t * f[i + 1];
  }
  // Four-point stencil around the cell containing x, shifted inward at the ends.
  auto cell = static_cast<std::ptrdiff_t>(std::floor(s));
  cell = std::clamp<std::ptrdiff_t>(cell, 0, static_cast<std::ptrdiff_t>(n) - 2);
  const std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  double result = 0.0;
  for (std::ptrdiff_t j = 0; j < 4; ++j) {
    double basis = 1.0;
    const double xj = static_cast<double>(start + j);
    for (std::ptrdiff_t m = 0; m < 4; ++m) {
      if (m == j) continue;
      const double xm = static_cast<double>(start + m);
      basis *= (s - xm) / (xj - xm);
    }
    result += basis * f[static_cast<std::size_t>(start + j)];
  }
  return result;
}

Field resample(const Field& f, std::size_t new_num_points) {
  if (new_num_points < 2) throw std::invalid_argument("resample needs at least 2 points");
  const Grid target(f.grid().a(), f.grid().b(), new_num_points);
  return Field::sample(target, [&f](double x) { return interpolate(f, x); });
}

void write_csv(std::ostream& out, const Field& f) {
  const auto old_precision = out.precision();
  out << "x,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) out << f.grid().node(i) << ',' << f[i] << '\n';
  out.precision(old_precision);
}

Field read_csv(std::istream& in) {
  std::string line;
  std::vector<double> xs;
  std::vector<double> vs;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.find_first_of("xX") != std::string::npos) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
    xs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 2) throw std::runtime_error("CSV field needs at least two rows");
  return Field(Grid(xs.front(), xs.back(), xs.size()), std::move(vs));
}

}  // namespace hpt
