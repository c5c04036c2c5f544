#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ndksvm/ndk_transform.hpp"
#include "ndksvm/whitening.hpp"

using namespace ndksvm;
using testutil::close;

namespace {

Matrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Matrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.at(i, j) = val(rng);
  // B^T B + n*I is symmetric positive definite.
  Matrix spd(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b.at(k, i) * b.at(k, j);
      spd.at(i, j) = s + (i == j ? 0.5 * n : 0.0);
    }
  return spd;
}

}  // namespace

TEST_CASE("covariance of a two-row sample") {
  // Rows (0,0) and (2,0): sample variance 2 on the first axis (n-1
  // divisor), zero elsewhere.
  std::vector<SparseVector> rows = {SparseVector(2, {}), SparseVector(2, {{0, 2.0}})};
  Matrix cov = covariance(rows);
  CHECK(cov.at(0, 0) == 2.0);
  CHECK(cov.at(0, 1) == 0.0);
  CHECK(cov.at(1, 0) == 0.0);
  CHECK(cov.at(1, 1) == 0.0);

  CHECK_THROWS_AS(covariance(std::vector<SparseVector>{rows[0]}), Error);
}

TEST_CASE("covariance matches the textbook two-pass formula on random data") {
  std::mt19937_64 rng(5);
  std::vector<SparseVector> rows;
  const std::size_t n = 30, d = 4;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(testutil::random_sparse(rng, d, 0.7));
  Matrix cov = covariance(rows);

  std::vector<double> mean(d, 0.0);
  for (const auto& r : rows) {
    auto dense = r.to_dense();
    for (std::size_t k = 0; k < d; ++k) mean[k] += dense[k] / n;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (const auto& r : rows) {
        auto dense = r.to_dense();
        s += (dense[i] - mean[i]) * (dense[j] - mean[j]);
      }
      CHECK(close(cov.at(i, j), s / (n - 1), 1e-10));
      CHECK(cov.at(i, j) == cov.at(j, i));
    }
}

TEST_CASE("eigendecomposition reconstructs the matrix") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 2 + rng() % 7;
    Matrix a = random_spd(rng, n);
    JacobiResult r = jacobi_eigen(a);
    REQUIRE(r.eigenvalues.size() == n);

    // Columns are orthonormal.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += r.vectors.at(k, i) * r.vectors.at(k, j);
        CHECK(close(s, i == j ? 1.0 : 0.0, 1e-9));
      }

    // A v = lambda v per column, and V diag V^T = A.
    for (std::size_t col = 0; col < n; ++col) {
      std::vector<double> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = r.vectors.at(k, col);
      std::vector<double> av = matvec(a, v);
      for (std::size_t k = 0; k < n; ++k)
        CHECK(close(av[k], r.eigenvalues[col] * v[k], 1e-8));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          s += r.vectors.at(i, k) * r.eigenvalues[k] * r.vectors.at(j, k);
        CHECK(close(s, a.at(i, j), 1e-8));
      }
  }
}

TEST_CASE("whitening a diagonal covariance takes reciprocal square roots") {
  Matrix cov(2);
  cov.at(0, 0) = 4.0;
  cov.at(1, 1) = 9.0;
  WhiteningTransform wt = whitening_from_covariance(cov, 0.0);
  CHECK(close(wt.C.at(0, 0), 0.5, 1e-12));
  CHECK(close(wt.C.at(1, 1), 1.0 / 3.0, 1e-12));
  CHECK(std::abs(wt.C.at(0, 1)) <= 1e-12);

  SparseVector x(2, {{0, 2.0}, {1, 3.0}});
  SparseVector w = whiten(wt, x);
  auto dense = w.to_dense();
  CHECK(close(dense[0], 1.0, 1e-12));
  CHECK(close(dense[1], 1.0, 1e-12));
}

TEST_CASE("singular covariance needs the ridge") {
  Matrix cov(2);
  cov.at(0, 0) = 1.0;  // second axis has zero variance
  CHECK_THROWS_AS(whitening_from_covariance(cov, 0.0), NumericError);
  WhiteningTransform wt = whitening_from_covariance(cov, 1e-4);
  CHECK(close(wt.C.at(1, 1), 100.0, 1e-9));  // 1/sqrt(ridge)
  CHECK(default_ridge(cov) > 0.0);
}

TEST_CASE("whitened kernel equals the negated Mahalanobis distance") {
  std::mt19937_64 rng(23);
  NdkParams plain{1.0, 0.0, false};
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 6;
    Matrix cov = random_spd(rng, n);
    WhiteningTransform wt = whitening_from_covariance(cov, 0.0);

    SparseVector x = testutil::random_sparse(rng, n, 0.8);
    SparseVector z = testutil::random_sparse(rng, n, 0.8);
    double got = sparse_mod_product(whiten(wt, x), whiten(wt, z), plain);

    // Reference: solve Cov s = (x - z) by elimination, then -(x-z)^T s.
    auto dx = x.to_dense(), dz = z.to_dense();
    std::vector<double> diff(n);
    for (std::size_t k = 0; k < n; ++k) diff[k] = dx[k] - dz[k];
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = cov.at(i, j);
    std::vector<double> s = testutil::solve_linear(rows, diff);
    double want = -testutil::dense_dot(diff, s);
    CHECK(close(got, want, 1e-7));
  }
}

TEST_CASE("distance-form decisions require the plain kernel shape") {
  SvmModel m;
  m.kernel = KernelSpec::ndk(1.0, 0.0);
  m.svs = {SparseVector(2, {})};
  m.coeffs = {1.0};
  m.dim = 2;
  NdkFastModel fm = precompute_dual(m);
  ComplexPrimalModel pm = build_complex_primal(m);

  Matrix cov(2);
  cov.at(0, 0) = 4.0;
  cov.at(1, 1) = 4.0;
  WhiteningTransform wt = whitening_from_covariance(cov, 0.0);

  // Support vector at the whitened origin: value is minus the Mahalanobis
  // distance squared, here -(2^2)/4 = -1.
  SparseVector x(2, {{0, 2.0}});
  CHECK(close(decide_mahalanobis(fm, wt, x).value, -1.0, 1e-12));
  CHECK(close(decide_mahalanobis(pm, wt, x).value, -1.0, 1e-12));

  SvmModel scaled = m;
  scaled.kernel = KernelSpec::ndk(2.0, 0.0);
  NdkFastModel fm2 = precompute_dual(scaled);
  CHECK_THROWS_AS(decide_mahalanobis(fm2, wt, x), Error);
  SvmModel shifted = m;
  shifted.kernel = KernelSpec::ndk(1.0, 1.0);
  ComplexPrimalModel pm2 = build_complex_primal(shifted);
  CHECK_THROWS_AS(decide_mahalanobis(pm2, wt, x), Error);
}
