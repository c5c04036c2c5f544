#pragma once

// Shared test utilities. Reference computations here deliberately use the
// most naive formulation available (dense loops, textbook formulas) so
// they stay independent of the library's optimized paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ndksvm/sparse_vector.hpp"

namespace testutil {

inline bool close(double lhs, double rhs, double tol) {
  return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

// Uniform sparse vector: each coordinate present with probability
// `density`, values in [-range, range].
inline ndksvm::SparseVector random_sparse(std::mt19937_64& rng, std::size_t dim,
                                          double density, double range = 2.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> val(-range, range);
  std::vector<ndksvm::SparseEntry> entries;
  for (std::size_t i = 0; i < dim; ++i)
    if (unit(rng) < density) entries.push_back({i, val(rng)});
  return ndksvm::SparseVector(dim, std::move(entries));
}

inline double dense_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dense_sq_distance(const std::vector<double>& a,
                                const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Reference transform: four complex components per input coordinate plus
// one tail slot, straight from the per-component definition.
inline std::vector<std::complex<double>> reference_phi(const std::vector<double>& x,
                                                       double a, double c) {
  using C = std::complex<double>;
  const double sa = std::sqrt(a), s2a = std::sqrt(2.0 * a);
  std::vector<C> out;
  out.reserve(4 * x.size() + 1);
  for (double v : x) {
    out.push_back(C(sa * (v * v - 1.0), 0.0));
    out.push_back(C(0.0, sa));
    out.push_back(C(s2a * v, 0.0));
    out.push_back(C(0.0, sa * v * v));
  }
  out.push_back(C(std::sqrt(c), 0.0));
  return out;
}

// Componentwise product sum without conjugation.
inline std::complex<double> reference_mod_product(
    const std::vector<std::complex<double>>& u,
    const std::vector<std::complex<double>>& v) {
  std::complex<double> s(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// Solves A s = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> A,
                                        std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> s(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= A[r][k] * s[k];
    s[r] = acc / A[r][r];
  }
  return s;
}

}  // namespace testutil
