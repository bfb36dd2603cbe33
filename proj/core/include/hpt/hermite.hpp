#pragma once

#include <string>
#include <vector>

#include "hpt/potential.hpp"

namespace hpt {

/// Largest n for which the coefficient matrix is built. All factorials
/// involved are at most (2n-1)! = 15! < 2^53, so they are exact doubles.
inline constexpr int kHermiteMaxOrder = 8;

using Matrix = std::vector<std::vector<double>>;

/// Scalar of the coupling polynomial coefficients. In double, the high-order
/// endpoint conditions at n = 6 lose about 1e-8 to coefficient rounding alone.
using HermiteReal = long double;

/// Boundary data (y_0, ..., y_{n-1}) at the free end of a coupling polynomial.
struct BoundaryData {
  std::vector<double> y;

  int n() const { return static_cast<int>(y.size()); }
  /// Throws std::invalid_argument unless 2 <= n <= kHermiteMaxOrder and all entries are finite.
  void validate() const;

  /// e_1 = (1, 0, ..., 0) of length n.
  static BoundaryData unit(int n, double first = 1.0);
};

enum class CouplingKind { zeta, eta };

std::string to_string(CouplingKind kind);
CouplingKind coupling_kind_from_string(const std::string& s);

/// Polynomial sum_i a_i x^i of degree <= 2n-1.
///
///  zeta: p^(k)(0) = y_k,            p(1) = 1,   p^(k)(1) = 0 (k >= 1)
///  eta:  p(0) = -1, p^(k)(0) = 0,   p^(k)(1) = y_k
struct CouplingPolynomial {
  std::vector<HermiteReal> coefficients;
  CouplingKind kind = CouplingKind::zeta;

  int n() const { return static_cast<int>(coefficients.size() / 2); }
};

enum class Pivoting { partial, complete };

/// The 2n x 2n matrix of the zeta conditions in the unknowns a_0..a_{2n-1}:
/// rows 0..n-1 are k! a_k (derivatives at 0), rows n..2n-1 are
/// sum_{i >= k} i!/(i-k)! a_i (derivatives at 1). Lower block triangular
/// [[A, 0], [B, C]] with A = diag((i-1)!) and C_ij = (n+j-1)!/(n+j-i)!.
/// Throws std::invalid_argument for n < 2 or n > kHermiteMaxOrder.
Matrix coefficient_matrix(int n);

/// The C block (n x n) of coefficient_matrix(n).
Matrix coupling_block(int n);

/// D_ij = binom(n+j-1, i-1), i, j = 1..n.
Matrix binomial_block(int n);

/// Determinants in exact integer arithmetic (fraction-free elimination),
/// returned as decimal strings since they overflow 64 bits for n = 8.
std::string exact_determinant(const Matrix& integer_matrix);
std::string coefficient_determinant(int n);
/// (prod_{i=1}^n (i-1)!)^2.
std::string factorial_product_squared(int n);

/// Dense Gaussian elimination. Throws std::runtime_error on a zero pivot.
std::vector<double> solve_dense(Matrix a, std::vector<double> b, Pivoting pivoting = Pivoting::partial);
std::vector<HermiteReal> solve_dense(const Matrix& a, std::vector<HermiteReal> b,
                                     Pivoting pivoting = Pivoting::partial);

CouplingPolynomial solve_zeta(const BoundaryData& y, Pivoting pivoting = Pivoting::partial);

/// Eta polynomial via the reflection eta(x) = -zeta(1 - x) with zeta data
/// y'_k = (-1)^(k+1) y_k.
CouplingPolynomial solve_eta(const BoundaryData& y, Pivoting pivoting = Pivoting::partial);

/// Eta polynomial from the mirrored system, without reflection.
CouplingPolynomial solve_eta_direct(const BoundaryData& y, Pivoting pivoting = Pivoting::partial);

/// k-th derivative at x; zero for k > 2n-1.
double eval_poly(const CouplingPolynomial& p, double x, int k = 0);
HermiteReal eval_poly_extended(const CouplingPolynomial& p, HermiteReal x, int k = 0);

/// Largest violation of the 2n endpoint conditions.
double endpoint_residual(const CouplingPolynomial& p, const BoundaryData& y);

/// Max-norm of the inverse coefficient matrix; bounds how fast the
/// coefficients can move with the boundary data.
double continuity_constant(int n);

/// int_0^1 W(p) - lam (p^(n-1))^2 + (p^(n))^2 dx for the Hermite polynomial of
/// the given kind, with exact polynomial derivatives and composite Simpson
/// (grid_points is rounded up to odd, minimum 3). This bounds the infimal
/// coupling energy over all functions with the same endpoint data.
double coupling_energy_upper_bound(const BoundaryData& y, double lam, const DoubleWell& w,
                                   int grid_points, CouplingKind kind = CouplingKind::zeta);

}  // namespace hpt
