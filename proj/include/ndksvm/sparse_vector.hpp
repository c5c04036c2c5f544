#pragma once

#include <cstddef>
#include <vector>

#include "ndksvm/error.hpp"

namespace ndksvm {

struct SparseEntry {
  std::size_t index;
  double value;
};

inline bool operator==(const SparseEntry& a, const SparseEntry& b) {
  return a.index == b.index && a.value == b.value;
}

// Sparse real vector over a fixed-dimension feature space.
// Entries are kept sorted by index, indices are unique, stored values are
// non-zero. Zero values passed to a constructor are dropped silently;
// duplicate or out-of-range indices are construction errors.
class SparseVector {
 public:
  SparseVector() = default;
  SparseVector(std::size_t dim, std::vector<SparseEntry> entries);

  static SparseVector from_dense(const std::vector<double>& dense);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<SparseEntry>& entries() const { return entries_; }

  std::vector<double> to_dense() const;

  bool operator==(const SparseVector& o) const {
    return dim_ == o.dim_ && entries_ == o.entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<SparseEntry> entries_;
};

// Scalar product, merged over the index intersection.
// Cost is linear in nnz(x1) + nnz(x2).
double dot(const SparseVector& x1, const SparseVector& x2);

// Squared Euclidean distance ||x1 - x2||^2, accumulated over the index
// union so the result is a sum of squares and never negative.
double sq_distance(const SparseVector& x1, const SparseVector& x2);

double norm_sq(const SparseVector& x);

}  // namespace ndksvm
