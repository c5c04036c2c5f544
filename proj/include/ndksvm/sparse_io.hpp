#pragma once

#include <string>
#include <vector>

#include "ndksvm/sparse_vector.hpp"

namespace ndksvm {

struct SparseFile {
  std::vector<double> labels;
  std::vector<SparseVector> vectors;
  std::size_t dim = 0;
};

// Line format: `label idx:val idx:val ...` with 1-based indices in the
// file, 0-based in memory. Blank lines are skipped. With dim == 0 the
// dimension is inferred from the largest index seen; otherwise indices
// beyond dim are errors.
SparseFile read_sparse_file(const std::string& path, std::size_t dim = 0);

void write_sparse_file(const std::string& path,
                       const std::vector<double>& labels,
                       const std::vector<SparseVector>& vectors);

// %.17g: enough digits that reading back reproduces the exact double.
std::string format_double(double v);

}  // namespace ndksvm
