#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "ndksvm/error.hpp"

namespace ndksvm {

using Complex = std::complex<double>;

// Fixed-length complex vector. Arithmetic helpers require equal lengths.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t size) : v_(size) {}
  ComplexVector(std::initializer_list<Complex> init) : v_(init) {}

  static ComplexVector from(std::vector<Complex> v) {
    ComplexVector r;
    r.v_ = std::move(v);
    return r;
  }

  std::size_t size() const { return v_.size(); }
  Complex& operator[](std::size_t i) { return v_[i]; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const ComplexVector& o) const { return v_ == o.v_; }

 private:
  std::vector<Complex> v_;
};

ComplexVector add(const ComplexVector& u, const ComplexVector& v);
ComplexVector scaled(Complex s, const ComplexVector& v);

// Component-product sum WITHOUT conjugation: sum_k u_k * v_k.
// Bilinear and symmetric, but not positive definite: <*v,v> can be
// negative (the all-i vector of length n gives -n).
Complex mod_scalar_product(const ComplexVector& u, const ComplexVector& v);

}  // namespace ndksvm
