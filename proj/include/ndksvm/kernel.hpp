#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ndksvm/ndk_transform.hpp"
#include "ndksvm/sparse_vector.hpp"

namespace ndksvm {

enum class KernelTag { Linear, Polynomial, Rbf, Ndk };

struct PolyParams {
  double a = 1.0;
  double c = 0.0;
  int d = 1;
};

struct RbfParams {
  double gamma = 1.0;
};

// Tagged kernel description. Construct through the factories so parameter
// constraints (gamma > 0, d >= 1, a > 0) hold from the start.
class KernelSpec {
 public:
  KernelSpec() : tag_(KernelTag::Linear) {}

  static KernelSpec linear();
  static KernelSpec polynomial(double a, double c, int d);
  static KernelSpec rbf(double gamma);
  static KernelSpec ndk(double a, double c, bool allow_negative_c = false);
  static KernelSpec ndk(const NdkParams& params);

  KernelTag tag() const { return tag_; }
  const PolyParams& poly() const;
  const RbfParams& rbf_params() const;
  const NdkParams& ndk_params() const;

  // Short human-readable form, e.g. "ndk(a=1,c=0.5)".
  std::string description() const;

  bool operator==(const KernelSpec& o) const;

 private:
  KernelTag tag_;
  PolyParams poly_{};
  RbfParams rbf_{};
  NdkParams ndk_{};
};

// K(x1, x2) for the given spec:
//   linear      dot(x1, x2)
//   polynomial  (a * dot(x1, x2) + c)^d
//   rbf         exp(-gamma * ||x1 - x2||^2)   (closed form only)
//   ndk         -a * ||x1 - x2||^2 + c
double kernel_eval(const KernelSpec& spec, const SparseVector& x1,
                   const SparseVector& x2);

struct CpdReport {
  double min_quadratic_form = 0.0;
  std::size_t trials = 0;
};

// Samples zero-sum coefficient vectors and reports the smallest quadratic
// form sum_{j,k} c_j c_k K(x_j, x_k) observed. Conditionally positive
// definite kernels keep this non-negative up to rounding.
CpdReport check_cpd(const KernelSpec& spec,
                    const std::vector<SparseVector>& points,
                    std::size_t trials, std::uint64_t seed = 0x5eedULL);

// key=value block used inside the model file.
void write_kernel_block(std::ostream& out, const KernelSpec& spec);
KernelSpec kernel_from_block(const std::map<std::string, std::string>& kv);

}  // namespace ndksvm
