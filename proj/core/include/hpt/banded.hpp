#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hpt {

class DiffOperator;

/// Symmetric positive definite band matrix with an in-place Cholesky
/// factorization. Only the lower band is stored.
class BandedSpdMatrix {
 public:
  BandedSpdMatrix(std::size_t size, std::size_t bandwidth);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  /// A(i, j) += v for |i - j| <= bandwidth (symmetric; either triangle).
  void add(std::size_t i, std::size_t j, double v);
  double get(std::size_t i, std::size_t j) const;

  /// A += scale * D^T diag(row_weights) D.
  void add_gram(const DiffOperator& d, std::span<const double> row_weights, double scale);

  /// Replaces row and column i by the identity row.
  void pin(std::size_t i);

  /// Throws std::runtime_error if a non-positive pivot shows up.
  void factorize();
  bool factorized() const { return factorized_; }

  /// Solves A x = b in place; requires factorize().
  void solve_in_place(std::span<double> b) const;

 private:
  double& at(std::size_t i, std::size_t j) { return data_[i * (bw_ + 1) + (j + bw_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (bw_ + 1) + (j + bw_ - i)]; }

  std::size_t n_;
  std::size_t bw_;
  std::vector<double> data_;
  bool factorized_ = false;
};

}  // namespace hpt
