#include "ndksvm/complex_vector.hpp"

namespace ndksvm {

ComplexVector add(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("add: length mismatch");
  ComplexVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

ComplexVector scaled(Complex s, const ComplexVector& v) {
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Complex mod_scalar_product(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("mod_scalar_product: length mismatch");
  long double re = 0.0L, im = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex p = u[i] * v[i];
    re += p.real();
    im += p.imag();
  }
  return Complex(static_cast<double>(re), static_cast<double>(im));
}

}  // namespace ndksvm
