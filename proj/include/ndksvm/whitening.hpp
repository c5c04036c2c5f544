#pragma once

#include <cstddef>
#include <vector>

#include "ndksvm/ndk_fast.hpp"
#include "ndksvm/sparse_vector.hpp"
#include "ndksvm/svm.hpp"

namespace ndksvm {

// Dense square matrix, row-major. Only as large as a reduced feature
// space; nothing here is tuned for big dimensions.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  static Matrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

// Sample covariance with N-1 divisor. Needs at least two rows.
Matrix covariance(const std::vector<SparseVector>& rows);
Matrix covariance(const TrainingSet& data);

struct JacobiResult {
  std::vector<double> eigenvalues;
  Matrix vectors;  // columns are eigenvectors; A = V * diag * V^T
  int sweeps = 0;
};

// Cyclic Jacobi rotations for a symmetric matrix. Converged when the
// off-diagonal Frobenius norm drops below 1e-12 times the input norm.
JacobiResult jacobi_eigen(const Matrix& sym);

// C = sqrt(Cov^-1): transforming inputs by C turns plain squared
// Euclidean distance into the covariance-weighted distance.
struct WhiteningTransform {
  Matrix C;
  std::size_t dim = 0;
};

// Suggested regularizer for near-singular covariance:
// 1e-6 * trace / dim.
double default_ridge(const Matrix& cov);

// Eigenvalues are clamped to at least `ridge` before inversion. With
// ridge == 0 a non-positive eigenvalue raises NumericError.
WhiteningTransform whitening_from_covariance(const Matrix& cov, double ridge);

SparseVector whiten(const WhiteningTransform& wt, const SparseVector& x);

// Fast ndk paths over whitened inputs. The model must have been built on
// whitened vectors with a = 1 and c = 0; then the decision value equals
// the kernel expansion under the covariance-weighted distance.
Decision decide_mahalanobis(const NdkFastModel& fm,
                            const WhiteningTransform& wt,
                            const SparseVector& x);
Decision decide_mahalanobis(const ComplexPrimalModel& pm,
                            const WhiteningTransform& wt,
                            const SparseVector& x);

}  // namespace ndksvm
