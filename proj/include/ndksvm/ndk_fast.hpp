#pragma once

#include <cstdint>
#include <vector>

#include "ndksvm/complex_vector.hpp"
#include "ndksvm/ndk_transform.hpp"
#include "ndksvm/svm.hpp"

namespace ndksvm {

// Folded form of an ndk-kernel expansion. With
//   S  = sum_j coeffs[j]
//   z  = a * sum_j coeffs[j] * sv_j          (dense)
//   u  = a * sum_j coeffs[j] * <sv_j, sv_j>
//   c' = c * S
// the decision value is  -a*<x,x>*S + 2*<x,z> - u + c' + bias,
// which costs O(nnz(x)) per query independent of the support count.
struct NdkFastModel {
  NdkParams params;
  double S = 0.0;
  double u = 0.0;
  double c_prime = 0.0;
  double bias = 0.0;
  std::vector<double> z;
  std::size_t dim = 0;
  std::uint64_t source = 0;  // fingerprint of the originating model
};

// Explicit weight vector w = sum_j coeffs[j] * phi_c(sv_j) in C^{4n+1}.
// zero_fold caches the product of w with the transform of the all-zero
// vector, so a query only walks its non-zero coordinates.
struct ComplexPrimalModel {
  NdkParams params;
  ComplexVector w;
  Complex zero_fold = 0.0;
  double bias = 0.0;
  std::size_t dim = 0;
  std::uint64_t source = 0;
};

std::uint64_t model_fingerprint(const SvmModel& model);

NdkFastModel precompute_dual(const SvmModel& model);
Decision decide_precomputed(const NdkFastModel& fm, const SparseVector& x);

// Requires c >= 0 (the transform needs sqrt(c)).
ComplexPrimalModel build_complex_primal(const SvmModel& model);

// Real part of <*w, phi_c(x)> plus bias. The imaginary part must cancel;
// a residue above 1e-9 raises NumericError. Cost is O(nnz(x)).
Decision decide_complex_primal(const ComplexPrimalModel& pm,
                               const SparseVector& x);

// Product of w with phi_c of the all-zero vector plus the sqrt(c) tail
// term. Recomputed by loaders; build_complex_primal fills it in.
Complex zero_input_fold(const ComplexVector& w, const NdkParams& params,
                        std::size_t dim);

}  // namespace ndksvm
