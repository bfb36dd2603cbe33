#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hpt/energy.hpp"

namespace hpt::detail {

/// Entries held fixed and an optional linear constraint w^T u = const.
struct Constraints {
  std::vector<bool> fixed;          // empty: nothing fixed
  std::vector<double> mass_weights; // empty: no linear constraint
};

/// Zeroes fixed entries and removes the component along mass_weights.
void project(std::span<double> v, const Constraints& c);

/// Applies (P M^{-1} P) in place with
///   M = 2 highest_scale D_k^T Q D_k + diagonal_scale diag(q),
/// fixed rows pinned to the identity and P the projection above.
std::function<void(std::span<double>)> make_preconditioner(const DiscreteFunctional& f,
                                                           double highest_scale,
                                                           double diagonal_scale,
                                                           const Constraints& c);

}  // namespace hpt::detail
