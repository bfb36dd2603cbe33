#include "hpt/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpt {

using boost::multiprecision::cpp_int;

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// i! / (i - k)!
double falling(int i, int k) {
  double f = 1.0;
  for (int t = i - k + 1; t <= i; ++t) f *= t;
  return f;
}

void check_order(int n) {
  if (n < 2 || n > kHermiteMaxOrder)
    throw std::invalid_argument("Hermite order n must be in [2, " + std::to_string(kHermiteMaxOrder) +
                                "], got " + std::to_string(n));
}

}  // namespace

void BoundaryData::validate() const {
  check_order(n());
  for (double v : y)
    if (!std::isfinite(v)) throw std::invalid_argument("boundary data must be finite");
}

BoundaryData BoundaryData::unit(int n, double first) {
  BoundaryData d{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  d.y[0] = first;
  return d;
}

std::string to_string(CouplingKind kind) { return kind == CouplingKind::zeta ? "zeta" : "eta"; }

CouplingKind coupling_kind_from_string(const std::string& s) {
  if (s == "zeta") return CouplingKind::zeta;
  if (s == "eta") return CouplingKind::eta;
  throw std::invalid_argument("unknown coupling kind '" + s + "' (expected zeta or eta)");
}

Matrix coefficient_matrix(int n) {
  check_order(n);
  const int m = 2 * n;
  Matrix a(m, std::vector<double>(m, 0.0));
  for (int k = 0; k < n; ++k) {
    a[k][k] = factorial(k);
    for (int i = k; i < m; ++i) a[n + k][i] = falling(i, k);
  }
  return a;
}

Matrix coupling_block(int n) {
  const Matrix a = coefficient_matrix(n);
  Matrix c(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j] = a[n + i][n + j];
  return c;
}

Matrix binomial_block(int n) {
  check_order(n);
  Matrix d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = falling(n + j, i) / factorial(i);
  return d;
}

std::string exact_determinant(const Matrix& integer_matrix) {
  const std::size_t m = integer_matrix.size();
  std::vector<std::vector<cpp_int>> a(m, std::vector<cpp_int>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (integer_matrix[i].size() != m) throw std::invalid_argument("determinant needs a square matrix");
    for (std::size_t j = 0; j < m; ++j) {
      const double v = integer_matrix[i][j];
      if (v != std::floor(v) || std::abs(v) > 9007199254740992.0)
        throw std::invalid_argument("exact_determinant needs exactly representable integer entries");
      a[i][j] = cpp_int(static_cast<long long>(v));
    }
  }
  if (m == 0) return "1";

  // Bareiss fraction-free elimination.
  cpp_int sign = 1;
  cpp_int prev = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < m && a[p][k] == 0) ++p;
      if (p == m) return "0";
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return cpp_int(sign * a[m - 1][m - 1]).str();
}

std::string coefficient_determinant(int n) { return exact_determinant(coefficient_matrix(n)); }

std::string factorial_product_squared(int n) {
  check_order(n);
  cpp_int prod = 1;
  cpp_int f = 1;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) f *= i - 1;
    prod *= f;
  }
  return cpp_int(prod * prod).str();
}

namespace {

template <class T>
std::vector<T> eliminate(const Matrix& matrix, std::vector<T> b, Pivoting pivoting) {
  const std::size_t m = matrix.size();
  if (b.size() != m) throw std::invalid_argument("solve_dense size mismatch");
  std::vector<std::vector<T>> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i].assign(matrix[i].begin(), matrix[i].end());
  std::vector<std::size_t> column(m);
  for (std::size_t j = 0; j < m; ++j) column[j] = j;

  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pr = k;
    std::size_t pc = k;
    T best = -1;
    const std::size_t last_col = pivoting == Pivoting::complete ? m : k + 1;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < last_col; ++j)
        if (std::abs(a[i][j]) > best) {
          best = std::abs(a[i][j]);
          pr = i;
          pc = j;
        }
    if (!(best > 0)) throw std::runtime_error("solve_dense: singular matrix");
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    if (pc != k) {
      for (auto& row : a) std::swap(row[k], row[pc]);
      std::swap(column[k], column[pc]);
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      const T f = a[i][k] / a[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < m; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<T> z(m);
  for (std::size_t k = m; k-- > 0;) {
    T v = b[k];
    for (std::size_t j = k + 1; j < m; ++j) v -= a[k][j] * z[j];
    z[k] = v / a[k][k];
  }
  std::vector<T> x(m);
  for (std::size_t j = 0; j < m; ++j) x[column[j]] = z[j];
  return x;
}

}  // namespace

std::vector<double> solve_dense(Matrix a, std::vector<double> b, Pivoting pivoting) {
  return eliminate(a, std::move(b), pivoting);
}

std::vector<HermiteReal> solve_dense(const Matrix& a, std::vector<HermiteReal> b, Pivoting pivoting) {
  return eliminate(a, std::move(b), pivoting);
}

CouplingPolynomial solve_zeta(const BoundaryData& y, Pivoting pivoting) {
  y.validate();
  const int n = y.n();
  std::vector<HermiteReal> rhs(2 * n, 0.0L);
  for (int k = 0; k < n; ++k) rhs[k] = y.y[k];
  rhs[n] = 1.0L;
  return {solve_dense(coefficient_matrix(n), std::move(rhs), pivoting), CouplingKind::zeta};
}

CouplingPolynomial solve_eta(const BoundaryData& y, Pivoting pivoting) {
  y.validate();
  const int n = y.n();
  BoundaryData mirrored{y.y};
  for (int k = 0; k < n; ++k) mirrored.y[k] = (k % 2 == 0 ? -1.0 : 1.0) * y.y[k];
  const CouplingPolynomial z = solve_zeta(mirrored, pivoting);

  // -z(1 - x) expanded in powers of x.
  const int m = 2 * n;
  std::vector<HermiteReal> c(m, 0.0L);
  for (int i = 0; i < m; ++i) {
    HermiteReal binom = 1.0L;
    for (int j = 0; j <= i; ++j) {
      if (j > 0) binom = binom * (i - j + 1) / j;
      c[j] -= z.coefficients[i] * binom * (j % 2 == 0 ? 1.0L : -1.0L);
    }
  }
  return {std::move(c), CouplingKind::eta};
}

CouplingPolynomial solve_eta_direct(const BoundaryData& y, Pivoting pivoting) {
  y.validate();
  const int n = y.n();
  std::vector<HermiteReal> rhs(2 * n, 0.0L);
  rhs[0] = -1.0L;
  for (int k = 0; k < n; ++k) rhs[n + k] = y.y[k];
  return {solve_dense(coefficient_matrix(n), std::move(rhs), pivoting), CouplingKind::eta};
}

HermiteReal eval_poly_extended(const CouplingPolynomial& p, HermiteReal x, int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be >= 0");
  const int m = static_cast<int>(p.coefficients.size());
  HermiteReal v = 0.0L;
  for (int i = m - 1 - k; i >= 0; --i) v = v * x + falling(k + i, k) * p.coefficients[k + i];
  return v;
}

double eval_poly(const CouplingPolynomial& p, double x, int k) {
  return static_cast<double>(eval_poly_extended(p, x, k));
}

double endpoint_residual(const CouplingPolynomial& p, const BoundaryData& y) {
  const int n = y.n();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double at0 = 0.0;
    double at1 = 0.0;
    if (p.kind == CouplingKind::zeta) {
      at0 = y.y[k];
      at1 = k == 0 ? 1.0 : 0.0;
    } else {
      at0 = k == 0 ? -1.0 : 0.0;
      at1 = y.y[k];
    }
    worst = std::max(worst, static_cast<double>(std::abs(eval_poly_extended(p, 0.0L, k) - at0)));
    worst = std::max(worst, static_cast<double>(std::abs(eval_poly_extended(p, 1.0L, k) - at1)));
  }
  return worst;
}

double continuity_constant(int n) {
  const Matrix a = coefficient_matrix(n);
  const std::size_t m = a.size();
  std::vector<double> row_sums(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> e(m, 0.0);
    e[j] = 1.0;
    const auto col = solve_dense(a, e);
    for (std::size_t i = 0; i < m; ++i) row_sums[i] += std::abs(col[i]);
  }
  return *std::max_element(row_sums.begin(), row_sums.end());
}

double coupling_energy_upper_bound(const BoundaryData& y, double lam, const DoubleWell& w,
                                   int grid_points, CouplingKind kind) {
  const CouplingPolynomial p = kind == CouplingKind::zeta ? solve_zeta(y) : solve_eta(y);
  const int n = y.n();
  int m = std::max(grid_points, 3);
  if (m % 2 == 0) ++m;
  const double h = 1.0 / (m - 1);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = i == m - 1 ? 1.0 : i * h;
    const double weight = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double lower = eval_poly(p, x, n - 1);
    const double highest = eval_poly(p, x, n);
    sum += weight * (w(eval_poly(p, x, 0)) - lam * lower * lower + highest * highest);
  }
  return sum * h / 3.0;
}

}  // namespace hpt
