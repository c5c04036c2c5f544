#pragma once

#include "ndksvm/complex_vector.hpp"
#include "ndksvm/sparse_vector.hpp"

namespace ndksvm {

// Scale and offset of the shifted negative-squared-distance kernel
//   K(x1, x2) = -a * ||x1 - x2||^2 + c.
struct NdkParams {
  double a = 1.0;
  double c = 0.0;
  // The complex feature transform needs sqrt(c), so c >= 0 normally.
  // A negative offset is legal only on the dual evaluation path and
  // callers must opt in.
  bool allow_negative_c = false;

  void validate() const;
};

// Per-component transform R -> C^4:
//   x |-> ( sqrt(a)*(x^2 - 1), sqrt(a)*i, sqrt(2a)*x, sqrt(a)*i*x^2 )
ComplexVector phi_component(double x, const NdkParams& params);

// Full transform R^n -> C^{4n+1}: n component blocks followed by sqrt(c).
// With the unconjugated product, <* phi_c(x1), phi_c(x2)> reproduces the
// kernel value -a*||x1-x2||^2 + c.
ComplexVector phi_c(const SparseVector& x, const NdkParams& params);

// <* phi(x1_k), phi(x2_k)> summed over the UNION of non-zero indices,
// plus c. A component that is zero on one side only still contributes
// (-a * x^2), so the union and not the intersection is merged; components
// zero on both sides contribute nothing. Cost is linear in
// nnz(x1) + nnz(x2); the full 4n+1 transform is never materialized.
double sparse_mod_product(const SparseVector& x1, const SparseVector& x2,
                          const NdkParams& params);

}  // namespace ndksvm
