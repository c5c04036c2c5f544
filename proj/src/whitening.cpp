#include "ndksvm/whitening.hpp"

#include <cmath>
#include <string>

namespace ndksvm {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("multiply: size mismatch");
  const std::size_t n = a.size();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  if (a.size() != x.size()) throw DimensionMismatch("matvec: size mismatch");
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j)
      acc += static_cast<long double>(a.at(i, j)) * x[j];
    out[i] = static_cast<double>(acc);
  }
  return out;
}

Matrix covariance(const std::vector<SparseVector>& rows) {
  if (rows.size() < 2) throw Error("covariance: need at least two rows");
  const std::size_t n = rows[0].dim();
  for (const SparseVector& r : rows) {
    if (r.dim() != n) throw DimensionMismatch("covariance: dimension mismatch");
  }
  const std::size_t m = rows.size();

  std::vector<long double> mean(n, 0.0L);
  for (const SparseVector& r : rows) {
    for (const SparseEntry& e : r.entries()) mean[e.index] += e.value;
  }
  for (long double& v : mean) v /= static_cast<long double>(m);

  Matrix cov(n);
  std::vector<double> dev(n);
  for (const SparseVector& r : rows) {
    const std::vector<double> dense = r.to_dense();
    for (std::size_t i = 0; i < n; ++i)
      dev[i] = dense[i] - static_cast<double>(mean[i]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) cov.at(i, j) += dev[i] * dev[j];
    }
  }
  const double scale = 1.0 / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cov.at(i, j) *= scale;
      cov.at(j, i) = cov.at(i, j);
    }
  }
  return cov;
}

Matrix covariance(const TrainingSet& data) { return covariance(data.vectors); }

JacobiResult jacobi_eigen(const Matrix& sym) {
  const std::size_t n = sym.size();
  if (n == 0) throw Error("jacobi_eigen: empty matrix");

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += sym.at(i, j) * sym.at(i, j);
  frob = std::sqrt(frob);

  Matrix a = sym;
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-12 * frob;

  int sweeps = 0;
  const int max_sweeps = 100;
  while (true) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a.at(i, j) * a.at(i, j);
    off = std::sqrt(off);
    if (off <= threshold || frob == 0.0) break;
    if (++sweeps > max_sweeps)
      throw NumericError("jacobi_eigen: no convergence");

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a.at(p, k);
          const double aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v.at(k, p);
          const double vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * vkq;
          v.at(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  JacobiResult r;
  r.vectors = v;
  r.sweeps = sweeps;
  r.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = a.at(i, i);
  return r;
}

double default_ridge(const Matrix& cov) {
  if (cov.size() == 0) throw Error("default_ridge: empty matrix");
  double tr = 0.0;
  for (std::size_t i = 0; i < cov.size(); ++i) tr += cov.at(i, i);
  return 1e-6 * tr / static_cast<double>(cov.size());
}

WhiteningTransform whitening_from_covariance(const Matrix& cov, double ridge) {
  const std::size_t n = cov.size();
  if (n == 0) throw Error("whitening_from_covariance: empty matrix");
  if (ridge < 0.0) throw Error("whitening_from_covariance: negative ridge");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      scale = std::max(scale, std::abs(cov.at(i, j)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(cov.at(i, j) - cov.at(j, i)) > 1e-9 * std::max(1.0, scale))
        throw Error("whitening_from_covariance: matrix is not symmetric");
    }
  }

  JacobiResult eig = jacobi_eigen(cov);
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = std::max(eig.eigenvalues[i], ridge);
    if (lam <= 0.0)
      throw NumericError(
          "whitening_from_covariance: non-positive eigenvalue; "
          "pass a positive ridge");
    inv_sqrt[i] = 1.0 / std::sqrt(lam);
  }

  WhiteningTransform wt;
  wt.dim = n;
  wt.C = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      long double acc = 0.0L;
      for (std::size_t k = 0; k < n; ++k) {
        acc += static_cast<long double>(eig.vectors.at(i, k)) * inv_sqrt[k] *
               eig.vectors.at(j, k);
      }
      wt.C.at(i, j) = static_cast<double>(acc);
      wt.C.at(j, i) = wt.C.at(i, j);
    }
  }
  return wt;
}

SparseVector whiten(const WhiteningTransform& wt, const SparseVector& x) {
  if (x.dim() != wt.dim) throw DimensionMismatch("whiten: dimension mismatch");
  const std::size_t n = wt.dim;
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (const SparseEntry& e : x.entries())
      acc += static_cast<long double>(wt.C.at(i, e.index)) * e.value;
    out[i] = static_cast<double>(acc);
  }
  return SparseVector::from_dense(out);
}

namespace {

void require_plain_params(const NdkParams& p, const char* who) {
  if (p.a != 1.0 || p.c != 0.0)
    throw Error(std::string(who) +
                ": whitened models must use a = 1 and c = 0");
}

}  // namespace

Decision decide_mahalanobis(const NdkFastModel& fm,
                            const WhiteningTransform& wt,
                            const SparseVector& x) {
  require_plain_params(fm.params, "decide_mahalanobis");
  return decide_precomputed(fm, whiten(wt, x));
}

Decision decide_mahalanobis(const ComplexPrimalModel& pm,
                            const WhiteningTransform& wt,
                            const SparseVector& x) {
  require_plain_params(pm.params, "decide_mahalanobis");
  return decide_complex_primal(pm, whiten(wt, x));
}

}  // namespace ndksvm
