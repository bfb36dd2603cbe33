#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "hpt/grid.hpp"

namespace hpt {

/// Distribution of the seeded random test functions.
///
/// Each sample is a function on the reference interval [0, 1], mapped
/// affinely onto whatever grid it is sampled on:
///  fourier      c_0 + sum_{k<=K} (a_k cos(k pi t) + b_k sin(k pi t)) / k^decay,
///               c_0 ~ U(-1, 1), a_k, b_k ~ N(0, amplitude^2), K ~ U{1..max_modes}
///  tanh         s tanh((t - t_0) / w) + c, s ~ U(0.5, 1.5) with random sign,
///               t_0 ~ U(0.2, 0.8), w ~ U(min_width, 0.3), c ~ U(-0.3, 0.3)
///  hermite_step a smoothed step from -1 to 1 built from the degree-7 coupling
///               polynomial (C^3 across the junctions), centred at t_0 with
///               half-width w, then scaled and shifted as for tanh
/// Kinds are drawn with probabilities 1/2, 1/4, 1/4.
struct EnsembleOptions {
  int max_modes = 8;
  double decay = 1.5;
  double amplitude = 1.0;
  double min_width = 0.05;
  /// When true, ensemble_interval draws a ~ U(-2, 2) and |I| ~ U(0.2, 5).
  bool random_intervals = false;
};

struct SmoothSample {
  std::string kind;
  std::string description;
  std::function<double(double)> reference;  // on [0, 1]
};

/// Sample `index` of the ensemble with the given seed. Each index has its own
/// generator state, so samples do not depend on how many were drawn before.
SmoothSample ensemble_sample(std::uint64_t seed, std::size_t index, const EnsembleOptions& opts = {});

/// Grid for sample `index`: (0, 1) unless opts.random_intervals.
Grid ensemble_interval(std::uint64_t seed, std::size_t index, std::size_t num_points,
                       const EnsembleOptions& opts = {});

/// Samples s.reference((x - a) / (b - a)) on the grid.
Field sample_on(const SmoothSample& s, const Grid& grid);

/// Convenience: ensemble_sample sampled on ensemble_interval.
Field ensemble_field(std::uint64_t seed, std::size_t index, std::size_t num_points,
                     const EnsembleOptions& opts = {}, std::string* description = nullptr);

/// Seed for (seed, index) pairs; SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hpt
