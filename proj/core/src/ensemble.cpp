#include "hpt/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "hpt/hermite.hpp"

namespace hpt {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

SmoothSample fourier_sample(std::mt19937_64& rng, const EnsembleOptions& opts) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, opts.amplitude);
  std::uniform_int_distribution<int> modes(1, std::max(1, opts.max_modes));
  const int k_max = modes(rng);
  const double c0 = unit(rng);
  std::vector<double> a(k_max + 1), b(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    const double scale = std::pow(k, -opts.decay);
    a[k] = normal(rng) * scale;
    b[k] = normal(rng) * scale;
  }
  std::ostringstream d;
  d << "fourier K=" << k_max << " c0=" << c0;
  return {"fourier", d.str(), [=](double t) {
            double v = c0;
            for (int k = 1; k <= k_max; ++k) {
              const double arg = k * std::numbers::pi * t;
              v += a[k] * std::cos(arg) + b[k] * std::sin(arg);
            }
            return v;
          }};
}

struct StepShape {
  double scale;
  double center;
  double width;
  double offset;
};

StepShape draw_step(std::mt19937_64& rng, const EnsembleOptions& opts) {
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  std::bernoulli_distribution flip(0.5);
  std::uniform_real_distribution<double> center(0.2, 0.8);
  std::uniform_real_distribution<double> width(opts.min_width, std::max(opts.min_width, 0.3));
  std::uniform_real_distribution<double> offset(-0.3, 0.3);
  StepShape s;
  s.scale = mag(rng) * (flip(rng) ? -1.0 : 1.0);
  s.center = center(rng);
  s.width = width(rng);
  s.offset = offset(rng);
  return s;
}

SmoothSample tanh_sample(std::mt19937_64& rng, const EnsembleOptions& opts) {
  const StepShape s = draw_step(rng, opts);
  std::ostringstream d;
  d << "tanh scale=" << s.scale << " center=" << s.center << " width=" << s.width;
  return {"tanh", d.str(),
          [=](double t) { return s.scale * std::tanh((t - s.center) / s.width) + s.offset; }};
}

SmoothSample hermite_sample(std::mt19937_64& rng, const EnsembleOptions& opts) {
  const StepShape s = draw_step(rng, opts);
  const CouplingPolynomial p = solve_zeta(BoundaryData::unit(4, -1.0));
  std::ostringstream d;
  d << "hermite_step scale=" << s.scale << " center=" << s.center << " width=" << s.width;
  return {"hermite_step", d.str(), [=](double t) {
            const double z = (t - s.center + s.width) / (2.0 * s.width);
            const double step = z <= 0.0 ? -1.0 : (z >= 1.0 ? 1.0 : eval_poly(p, z));
            return s.scale * step + s.offset;
          }};
}

}  // namespace

SmoothSample ensemble_sample(std::uint64_t seed, std::size_t index, const EnsembleOptions& opts) {
  std::mt19937_64 rng(mix_seed(seed, index));
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  const double u = pick(rng);
  if (u < 0.5) return fourier_sample(rng, opts);
  if (u < 0.75) return tanh_sample(rng, opts);
  return hermite_sample(rng, opts);
}

Grid ensemble_interval(std::uint64_t seed, std::size_t index, std::size_t num_points,
                       const EnsembleOptions& opts) {
  if (!opts.random_intervals) return Grid(0.0, 1.0, num_points);
  std::mt19937_64 rng(mix_seed(seed ^ 0xA5A5A5A5A5A5A5A5ull, index));
  std::uniform_real_distribution<double> left(-2.0, 2.0);
  std::uniform_real_distribution<double> length(0.2, 5.0);
  const double a = left(rng);
  return Grid(a, a + length(rng), num_points);
}

Field sample_on(const SmoothSample& s, const Grid& grid) {
  const double a = grid.a();
  const double len = grid.length();
  return Field::sample(grid, [&](double x) { return s.reference((x - a) / len); });
}

Field ensemble_field(std::uint64_t seed, std::size_t index, std::size_t num_points,
                     const EnsembleOptions& opts, std::string* description) {
  const SmoothSample s = ensemble_sample(seed, index, opts);
  if (description) *description = s.description;
  return sample_on(s, ensemble_interval(seed, index, num_points, opts));
}

}  // namespace hpt
