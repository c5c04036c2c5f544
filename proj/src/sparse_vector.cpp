#include "ndksvm/sparse_vector.hpp"

#include <algorithm>
#include <limits>

namespace ndksvm {

SparseVector::SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) {
              return a.index < b.index;
            });
  entries_.reserve(entries.size());
  bool have_prev = false;
  std::size_t prev = 0;
  for (const SparseEntry& e : entries) {
    if (e.index >= dim_) throw Error("sparse entry index out of range");
    if (have_prev && e.index == prev) throw Error("duplicate sparse entry index");
    prev = e.index;
    have_prev = true;
    if (e.value != 0.0) entries_.push_back(e);
  }
}

SparseVector SparseVector::from_dense(const std::vector<double>& dense) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.push_back({i, dense[i]});
  }
  SparseVector v;
  v.dim_ = dense.size();
  v.entries_ = std::move(entries);
  return v;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (const SparseEntry& e : entries_) out[e.index] = e.value;
  return out;
}

double dot(const SparseVector& x1, const SparseVector& x2) {
  if (x1.dim() != x2.dim()) throw DimensionMismatch("dot: dimension mismatch");
  const auto& a = x1.entries();
  const auto& b = x2.entries();
  long double acc = 0.0L;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (a[i].index > b[j].index) {
      ++j;
    } else {
      acc += static_cast<long double>(a[i].value) * b[j].value;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(acc);
}

double sq_distance(const SparseVector& x1, const SparseVector& x2) {
  if (x1.dim() != x2.dim())
    throw DimensionMismatch("sq_distance: dimension mismatch");
  const auto& a = x1.entries();
  const auto& b = x2.entries();
  long double acc = 0.0L;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double d;
    if (j >= b.size() || (i < a.size() && a[i].index < b[j].index)) {
      d = a[i].value;
      ++i;
    } else if (i >= a.size() || b[j].index < a[i].index) {
      d = -b[j].value;
      ++j;
    } else {
      d = a[i].value - b[j].value;
      ++i;
      ++j;
    }
    acc += static_cast<long double>(d) * d;
  }
  return static_cast<double>(acc);
}

double norm_sq(const SparseVector& x) {
  long double acc = 0.0L;
  for (const SparseEntry& e : x.entries())
    acc += static_cast<long double>(e.value) * e.value;
  return static_cast<double>(acc);
}

}  // namespace ndksvm
