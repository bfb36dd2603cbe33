#include "descent.hpp"

#include <memory>
#include <numeric>

#include "hpt/banded.hpp"

namespace hpt::detail {

void project(std::span<double> v, const Constraints& c) {
  if (!c.fixed.empty())
    for (std::size_t i = 0; i < v.size(); ++i)
      if (c.fixed[i]) v[i] = 0.0;
  if (!c.mass_weights.empty()) {
    const auto& w = c.mass_weights;
    double wv = 0.0;
    double ww = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!c.fixed.empty() && c.fixed[i]) continue;
      wv += w[i] * v[i];
      ww += w[i] * w[i];
    }
    if (ww > 0.0)
      for (std::size_t i = 0; i < v.size(); ++i)
        if (c.fixed.empty() || !c.fixed[i]) v[i] -= w[i] * wv / ww;
  }
}

std::function<void(std::span<double>)> make_preconditioner(const DiscreteFunctional& f,
                                                           double highest_scale,
                                                           double diagonal_scale,
                                                           const Constraints& c) {
  const DiffOperator& d = f.highest_operator();
  const std::size_t n = f.grid().size();
  const std::size_t bw = d.max_width() > 0 ? d.max_width() - 1 : 0;
  auto m = std::make_shared<BandedSpdMatrix>(n, bw);
  m->add_gram(d, f.highest_weights(), 2.0 * highest_scale);
  const auto q = f.node_weights();
  for (std::size_t i = 0; i < n; ++i) m->add(i, i, diagonal_scale * q[i]);
  if (!c.fixed.empty())
    for (std::size_t i = 0; i < n; ++i)
      if (c.fixed[i]) m->pin(i);
  m->factorize();
  return [m, c](std::span<double> v) {
    project(v, c);
    m->solve_in_place(v);
    project(v, c);
  };
}

}  // namespace hpt::detail
