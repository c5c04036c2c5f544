#include "ndksvm/ndk_transform.hpp"

#include <cmath>

namespace ndksvm {

void NdkParams::validate() const {
  if (!(a > 0.0)) throw Error("ndk params: a must be positive");
  if (c < 0.0 && !allow_negative_c)
    throw Error("ndk params: negative c requires allow_negative_c");
  if (std::isnan(a) || std::isnan(c)) throw Error("ndk params: nan parameter");
}

ComplexVector phi_component(double x, const NdkParams& params) {
  params.validate();
  const double sa = std::sqrt(params.a);
  const double s2a = std::sqrt(2.0 * params.a);
  ComplexVector out(4);
  out[0] = Complex(sa * (x * x - 1.0), 0.0);
  out[1] = Complex(0.0, sa);
  out[2] = Complex(s2a * x, 0.0);
  out[3] = Complex(0.0, sa * x * x);
  return out;
}

ComplexVector phi_c(const SparseVector& x, const NdkParams& params) {
  params.validate();
  if (params.c < 0.0)
    throw NumericError("phi_c: negative c has no real sqrt; dual path only");
  const double sa = std::sqrt(params.a);
  const double s2a = std::sqrt(2.0 * params.a);
  const std::size_t n = x.dim();
  ComplexVector out(4 * n + 1);
  // Components for zero coordinates: phi(0) = (-sqrt(a), sqrt(a)*i, 0, 0).
  for (std::size_t k = 0; k < n; ++k) {
    out[4 * k + 0] = Complex(-sa, 0.0);
    out[4 * k + 1] = Complex(0.0, sa);
    out[4 * k + 2] = Complex(0.0, 0.0);
    out[4 * k + 3] = Complex(0.0, 0.0);
  }
  for (const SparseEntry& e : x.entries()) {
    const double v = e.value;
    out[4 * e.index + 0] = Complex(sa * (v * v - 1.0), 0.0);
    out[4 * e.index + 2] = Complex(s2a * v, 0.0);
    out[4 * e.index + 3] = Complex(0.0, sa * v * v);
  }
  out[4 * n] = Complex(std::sqrt(params.c), 0.0);
  return out;
}

namespace {

// Real part of the unconjugated product of two transformed components,
// written with the same factorization the dense path produces. The
// imaginary part is identically zero: real components meet real ones and
// imaginary components meet imaginary ones.
inline double block_product(double x1, double x2, double sa, double s2a) {
  const double p0 = sa * (x1 * x1 - 1.0);
  const double q0 = sa * (x2 * x2 - 1.0);
  const double p2 = s2a * x1;
  const double q2 = s2a * x2;
  const double p3 = sa * x1 * x1;
  const double q3 = sa * x2 * x2;
  return p0 * q0 - sa * sa + p2 * q2 - p3 * q3;
}

}  // namespace

double sparse_mod_product(const SparseVector& x1, const SparseVector& x2,
                          const NdkParams& params) {
  params.validate();
  if (x1.dim() != x2.dim())
    throw DimensionMismatch("sparse_mod_product: dimension mismatch");
  const double sa = std::sqrt(params.a);
  const double s2a = std::sqrt(2.0 * params.a);
  const auto& a = x1.entries();
  const auto& b = x2.entries();
  long double acc = 0.0L;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].index < b[j].index)) {
      acc += block_product(a[i].value, 0.0, sa, s2a);
      ++i;
    } else if (i >= a.size() || b[j].index < a[i].index) {
      acc += block_product(0.0, b[j].value, sa, s2a);
      ++j;
    } else {
      acc += block_product(a[i].value, b[j].value, sa, s2a);
      ++i;
      ++j;
    }
  }
  acc += params.c;
  return static_cast<double>(acc);
}

}  // namespace ndksvm
