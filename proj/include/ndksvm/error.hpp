#pragma once

#include <stdexcept>

namespace ndksvm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands over different feature spaces or of different lengths.
struct DimensionMismatch : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Numerical failure: singular matrix, imaginary residue beyond tolerance,
// and similar internal-consistency violations.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace ndksvm
