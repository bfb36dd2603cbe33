#include "hpt/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hpt/stencil.hpp"

namespace hpt {

BandedSpdMatrix::BandedSpdMatrix(std::size_t size, std::size_t bandwidth)
    : n_(size), bw_(bandwidth), data_(size * (bandwidth + 1), 0.0) {}

void BandedSpdMatrix::add(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) throw std::out_of_range("entry outside the band");
  at(i, j) += v;
}

double BandedSpdMatrix::get(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) return 0.0;
  return at(i, j);
}

void BandedSpdMatrix::add_gram(const DiffOperator& d, std::span<const double> row_weights,
                               double scale) {
  for (std::size_t r = 0; r < d.rows(); ++r) {
    const auto w = d.row_weights(r);
    const std::size_t start = d.row_start(r);
    const double s = scale * row_weights[r];
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b) at(start + a, start + b) += s * w[a] * w[b];
  }
}

void BandedSpdMatrix::pin(std::size_t i) {
  const std::size_t lo = i > bw_ ? i - bw_ : 0;
  for (std::size_t j = lo; j < i; ++j) at(i, j) = 0.0;
  const std::size_t hi = std::min(n_ - 1, i + bw_);
  for (std::size_t k = i + 1; k <= hi; ++k) at(k, i) = 0.0;
  at(i, i) = 1.0;
}

void BandedSpdMatrix::factorize() {
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > bw_ ? j - bw_ : 0;
    double diag = at(j, j);
    for (std::size_t k = lo; k < j; ++k) diag -= at(j, k) * at(j, k);
    if (!(diag > 0.0))
      throw std::runtime_error("banded Cholesky: non-positive pivot at row " + std::to_string(j));
    const double ljj = std::sqrt(diag);
    at(j, j) = ljj;
    const std::size_t hi = std::min(n_ - 1, j + bw_);
    for (std::size_t i = j + 1; i <= hi; ++i) {
      const std::size_t lo_i = i > bw_ ? i - bw_ : 0;
      double v = at(i, j);
      for (std::size_t k = std::max(lo, lo_i); k < j; ++k) v -= at(i, k) * at(j, k);
      at(i, j) = v / ljj;
    }
  }
  factorized_ = true;
}

void BandedSpdMatrix::solve_in_place(std::span<double> b) const {
  if (!factorized_) throw std::logic_error("solve_in_place before factorize");
  if (b.size() != n_) throw std::invalid_argument("banded solve size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > bw_ ? i - bw_ : 0;
    double v = b[i];
    for (std::size_t k = lo; k < i; ++k) v -= at(i, k) * b[k];
    b[i] = v / at(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    const std::size_t hi = std::min(n_ - 1, ii + bw_);
    double v = b[ii];
    for (std::size_t k = ii + 1; k <= hi; ++k) v -= at(k, ii) * b[k];
    b[ii] = v / at(ii, ii);
  }
}

}  // namespace hpt
