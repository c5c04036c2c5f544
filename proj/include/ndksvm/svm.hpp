#pragma once

#include <cstdint>
#include <vector>

#include "ndksvm/kernel.hpp"
#include "ndksvm/sparse_vector.hpp"

namespace ndksvm {

// Binary training set with labels in {-1, +1}.
struct TrainingSet {
  std::vector<SparseVector> vectors;
  std::vector<int> labels;

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].dim(); }
  // Non-empty, labels in {-1,+1} with both classes present, equal dims.
  void validate() const;
};

struct SmoConfig {
  double C = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  long max_iters = 1000000;
  std::uint64_t seed = 1;
  // Bound on cached kernel rows held by the trainer.
  std::size_t cache_rows = 512;
  // Recompute the dual objective after every accepted step and fail on a
  // decrease. Quadratic cost per step; test use only.
  bool check_objective = false;

  void validate() const;
};

struct SvmModel {
  KernelSpec kernel;
  std::vector<SparseVector> svs;
  std::vector<double> coeffs;  // alpha_j * y_j, pair-wise with svs
  double bias = 0.0;
  std::size_t dim = 0;

  std::size_t n_svs() const { return svs.size(); }
};

// Raised when the pairwise optimizer runs out of its iteration budget.
// Carries the best model reached so far.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, SvmModel best_model, long iterations)
      : Error(msg), best(std::move(best_model)), iters(iterations) {}
  SvmModel best;
  long iters;
};

// Pairwise coordinate-ascent trainer. Outer loop scans for the first
// multiplier violating its optimality condition beyond tol; the partner is
// drawn at random (seeded), with a deterministic scan fallback when the
// random pick cannot move. Training is deterministic for a fixed seed.
// If alpha_out is non-null it receives the final multipliers, indexed like
// the training set.
SvmModel smo_train(const TrainingSet& data, const KernelSpec& kernel,
                   const SmoConfig& cfg,
                   std::vector<double>* alpha_out = nullptr);

struct Decision {
  double value = 0.0;
  int label = 0;  // sign of value; 0 stays 0
};

// Straight kernel expansion: sum_j coeffs[j] * K(x, sv_j) + bias.
// Cost grows with the support-vector count.
Decision decide_dual(const SvmModel& model, const SparseVector& x);

struct LinearPrimal {
  std::vector<double> w;
  double bias = 0.0;
};

// Collapses a linear-kernel model into an explicit weight vector.
// Any other kernel is an error.
LinearPrimal extract_linear_primal(const SvmModel& model);

// Largest violation of the optimality conditions over the training set,
// given the full multiplier vector. Zero means every point satisfies its
// condition exactly.
double max_kkt_violation(const TrainingSet& data, const KernelSpec& kernel,
                         const std::vector<double>& alpha, double bias,
                         double C);

inline int sign_label(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace ndksvm
