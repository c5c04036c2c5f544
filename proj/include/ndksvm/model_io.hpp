#pragma once

#include <optional>
#include <string>

#include "ndksvm/ndk_fast.hpp"
#include "ndksvm/svm.hpp"

namespace ndksvm {

struct LoadedModel {
  SvmModel model;
  std::optional<NdkFastModel> fast;
  std::optional<ComplexPrimalModel> primal;
};

// Plain-text model file: a key=value header (format version, kernel block,
// dim, m, b) followed by one `sv coeff idx:val ...` line per support
// vector, then optional `[section ...]` blocks for the folded ndk forms.
// Indices are 1-based in the file. Numbers use 17 significant digits so a
// load reproduces the saved doubles exactly. Loaders skip sections they
// do not recognize.
void save_model(const std::string& path, const SvmModel& model,
                const NdkFastModel* fast = nullptr,
                const ComplexPrimalModel* primal = nullptr);

LoadedModel load_model(const std::string& path);

}  // namespace ndksvm
