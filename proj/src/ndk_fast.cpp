#include "ndksvm/ndk_fast.hpp"

#include <cmath>
#include <cstring>

namespace ndksvm {

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void fnv_mix_double(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  fnv_mix(h, &bits, sizeof bits);
}

}  // namespace

std::uint64_t model_fingerprint(const SvmModel& model) {
  std::uint64_t h = 1469598103934665603ULL;
  const std::uint64_t dim = model.dim;
  const std::uint64_t m = model.svs.size();
  fnv_mix(h, &dim, sizeof dim);
  fnv_mix(h, &m, sizeof m);
  fnv_mix_double(h, model.bias);
  for (std::size_t j = 0; j < model.svs.size(); ++j) {
    fnv_mix_double(h, model.coeffs[j]);
    for (const SparseEntry& e : model.svs[j].entries()) {
      const std::uint64_t idx = e.index;
      fnv_mix(h, &idx, sizeof idx);
      fnv_mix_double(h, e.value);
    }
  }
  return h;
}

NdkFastModel precompute_dual(const SvmModel& model) {
  if (model.kernel.tag() != KernelTag::Ndk)
    throw Error("precompute_dual: model kernel is not ndk");
  const NdkParams& p = model.kernel.ndk_params();

  NdkFastModel fm;
  fm.params = p;
  fm.bias = model.bias;
  fm.dim = model.dim;
  fm.source = model_fingerprint(model);
  fm.z.assign(model.dim, 0.0);

  long double S = 0.0L, u = 0.0L;
  for (std::size_t j = 0; j < model.svs.size(); ++j) {
    const double w = model.coeffs[j];
    S += w;
    u += static_cast<long double>(w) * norm_sq(model.svs[j]);
    for (const SparseEntry& e : model.svs[j].entries())
      fm.z[e.index] += w * e.value;
  }
  for (double& v : fm.z) v *= p.a;
  fm.S = static_cast<double>(S);
  fm.u = static_cast<double>(p.a * u);
  fm.c_prime = p.c * fm.S;
  return fm;
}

Decision decide_precomputed(const NdkFastModel& fm, const SparseVector& x) {
  if (x.dim() != fm.dim)
    throw DimensionMismatch("decide_precomputed: dimension mismatch");
  long double xx = 0.0L, xz = 0.0L;
  for (const SparseEntry& e : x.entries()) {
    xx += static_cast<long double>(e.value) * e.value;
    xz += static_cast<long double>(e.value) * fm.z[e.index];
  }
  const double v = static_cast<double>(-fm.params.a * xx * fm.S + 2.0L * xz -
                                       fm.u + fm.c_prime + fm.bias);
  return Decision{v, sign_label(v)};
}

Complex zero_input_fold(const ComplexVector& w, const NdkParams& params,
                        std::size_t dim) {
  if (w.size() != 4 * dim + 1)
    throw DimensionMismatch("zero_input_fold: weight length mismatch");
  const double sa = std::sqrt(params.a);
  const Complex phi0_0(-sa, 0.0);
  const Complex phi0_1(0.0, sa);
  long double re = 0.0L, im = 0.0L;
  for (std::size_t k = 0; k < dim; ++k) {
    const Complex t = w[4 * k] * phi0_0 + w[4 * k + 1] * phi0_1;
    re += t.real();
    im += t.imag();
  }
  const Complex tail = w[4 * dim] * Complex(std::sqrt(params.c), 0.0);
  re += tail.real();
  im += tail.imag();
  return Complex(static_cast<double>(re), static_cast<double>(im));
}

ComplexPrimalModel build_complex_primal(const SvmModel& model) {
  if (model.kernel.tag() != KernelTag::Ndk)
    throw Error("build_complex_primal: model kernel is not ndk");
  const NdkParams& p = model.kernel.ndk_params();
  if (p.c < 0.0)
    throw NumericError("build_complex_primal: negative c has no transform");

  const std::size_t n = model.dim;
  const double sa = std::sqrt(p.a);
  const double s2a = std::sqrt(2.0 * p.a);

  // Componentwise sum of coeff * phi_c(sv) over all support vectors,
  // factored through the per-coordinate sums
  //   l_k = sum_j coeff_j * sv_jk    and    q_k = sum_j coeff_j * sv_jk^2
  // so the build walks only stored entries.
  std::vector<double> l(n, 0.0), q(n, 0.0);
  long double csum = 0.0L;
  for (std::size_t j = 0; j < model.svs.size(); ++j) {
    const double w = model.coeffs[j];
    csum += w;
    for (const SparseEntry& e : model.svs[j].entries()) {
      l[e.index] += w * e.value;
      q[e.index] += w * e.value * e.value;
    }
  }
  const double S = static_cast<double>(csum);

  ComplexPrimalModel pm;
  pm.params = p;
  pm.bias = model.bias;
  pm.dim = n;
  pm.source = model_fingerprint(model);
  pm.w = ComplexVector(4 * n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    pm.w[4 * k + 0] = Complex(sa * (q[k] - S), 0.0);
    pm.w[4 * k + 1] = Complex(0.0, sa * S);
    pm.w[4 * k + 2] = Complex(s2a * l[k], 0.0);
    pm.w[4 * k + 3] = Complex(0.0, sa * q[k]);
  }
  pm.w[4 * n] = Complex(std::sqrt(p.c) * S, 0.0);
  pm.zero_fold = zero_input_fold(pm.w, p, n);
  return pm;
}

Decision decide_complex_primal(const ComplexPrimalModel& pm,
                               const SparseVector& x) {
  if (x.dim() != pm.dim)
    throw DimensionMismatch("decide_complex_primal: dimension mismatch");
  const double sa = std::sqrt(pm.params.a);
  const double s2a = std::sqrt(2.0 * pm.params.a);
  const Complex phi0_0(-sa, 0.0);
  const Complex phi0_1(0.0, sa);

  long double re = pm.zero_fold.real();
  long double im = pm.zero_fold.imag();
  for (const SparseEntry& e : x.entries()) {
    const std::size_t base = 4 * e.index;
    const double v = e.value;
    // Block of phi_c(x) for this coordinate, materialized in place.
    const Complex p0(sa * (v * v - 1.0), 0.0);
    const Complex p1(0.0, sa);
    const Complex p2(s2a * v, 0.0);
    const Complex p3(0.0, sa * v * v);
    const Complex block = pm.w[base] * p0 + pm.w[base + 1] * p1 +
                          pm.w[base + 2] * p2 + pm.w[base + 3] * p3;
    // Remove the zero-coordinate contribution already inside zero_fold.
    const Complex zero_block = pm.w[base] * phi0_0 + pm.w[base + 1] * phi0_1;
    re += block.real() - zero_block.real();
    im += block.imag() - zero_block.imag();
  }
  if (std::abs(static_cast<double>(im)) > 1e-9)
    throw NumericError("decide_complex_primal: imaginary residue exceeds 1e-9");
  const double v = static_cast<double>(re) + pm.bias;
  return Decision{v, sign_label(v)};
}

}  // namespace ndksvm
