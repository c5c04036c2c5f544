#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ndksvm/ndk_fast.hpp"
#include "ndksvm/svm.hpp"
#include "ndksvm/textfeat.hpp"

namespace ndksvm {

// Per-category view of a multi-label collection: features[c][i] is
// document i as category c's model sees it, labels[c][i] its one-vs-rest
// label. Category-independent featurizations simply repeat the vectors.
struct MultiLabelData {
  std::vector<std::string> categories;
  std::vector<std::vector<SparseVector>> features;
  std::vector<std::vector<int>> labels;

  std::size_t n_docs() const { return features.empty() ? 0 : features[0].size(); }
  TrainingSet training_set(std::size_t cat) const;
  void validate() const;
};

// Featurizes a corpus against training-split vocabulary and stats.
// Category order follows stats.categories.
MultiLabelData make_dataset(const Corpus& corpus, const Vocabulary& vocab,
                            const CategoryStats& stats, FeatureMode mode,
                            const std::set<std::string>& stopwords = {});

enum class AssignmentMode {
  // Every category with decision value >= 0; possibly none.
  IndependentThreshold,
  // Same rule, but an empty result falls back to the single best value
  // (ties -> lowest category index), so every document gets a label.
  BestValueFallback,
};

enum class DecisionPath { Dual, Precomputed, Primal };

struct MultiLabelClassifier {
  std::vector<std::string> categories;
  std::vector<SvmModel> models;
  std::vector<std::optional<NdkFastModel>> fast;
  std::vector<std::optional<ComplexPrimalModel>> primal;
  AssignmentMode mode = AssignmentMode::IndependentThreshold;
  DecisionPath path = DecisionPath::Dual;

  void validate() const;
  // Builds the folded forms for every ndk model (the transform-based one
  // only when c >= 0).
  void attach_fast_paths();
  double decide_value(std::size_t cat, const SparseVector& x) const;
  std::vector<std::size_t> assign(
      const std::vector<const SparseVector*>& per_cat_x) const;
};

// Category indices selected for one document, ascending.
std::vector<std::size_t> assign_from_values(const std::vector<double>& values,
                                            AssignmentMode mode);

struct EvalReport {
  std::vector<std::string> categories;
  std::vector<double> precision, recall, f1;
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  std::vector<double> per_category_ms;
  double total_ms = 0.0;
  std::string path_name;
};

EvalReport evaluate(const MultiLabelClassifier& clf,
                    const MultiLabelData& test);

// Per-category one-vs-rest training. Category c trains with seed
// cfg.seed + c so runs reproduce regardless of worker count.
std::vector<SvmModel> train_one_vs_rest(const MultiLabelData& data,
                                        const KernelSpec& kernel,
                                        const SmoConfig& cfg, int workers = 1);

// Bias maximizing F1 on the heldout set. Candidate cutoffs are the
// midpoints between consecutive sorted decision values plus guards past
// both ends and the current cutoff; ties prefer the bias closest to the
// model's. A heldout set without positives pushes the bias below every
// score (nothing predicted positive, F1 0 by convention).
double tune_bias(const SvmModel& model, const std::vector<SparseVector>& xs,
                 const std::vector<int>& ys);

struct GridPoint {
  KernelSpec kernel;
  SmoConfig smo;
};

struct GridRow {
  GridPoint point;
  double macro_f1 = 0.0;
};

struct GridResult {
  GridPoint best;
  std::size_t best_index = 0;
  std::vector<GridRow> table;
};

// Exhaustive scan of the grid: one-vs-rest training on `train`, macro-F1
// on `val`, best wins, ties keep the earliest point. A point whose
// training runs out of budget scores -1 and stays in the table.
GridResult grid_search(const MultiLabelData& train, const MultiLabelData& val,
                       const std::vector<GridPoint>& grid, int workers = 1);

std::vector<GridPoint> default_grid(KernelTag tag, const SmoConfig& base = {},
                                    int poly_degree = 2);

// Duplicates positives (seeded, with replacement) until the positive
// share reaches target_ratio; already-balanced sets come back unchanged.
TrainingSet oversample_to_ratio(const TrainingSet& ts, double target_ratio,
                                std::uint64_t seed);

// target_ratio <= 0 means "the largest positive share observed across
// categories". Category c draws with seed + c.
std::vector<TrainingSet> balance_oversample(
    const std::vector<TrainingSet>& per_category, std::uint64_t seed,
    double target_ratio = 0.0);

struct BenchPath {
  std::string name;
  std::function<double(const SparseVector&)> decide;
};

struct BenchCategory {
  std::string name;
  std::vector<BenchPath> paths;
};

struct BenchTable {
  std::vector<std::string> row_names;  // categories then "all"
  std::vector<std::string> col_names;
  std::vector<std::vector<double>> median_ms;  // [row][col], NaN if absent
  std::size_t n_probes = 0;
  int reps = 0;
};

// Median wall time per path over `reps` timed passes of the probe batch,
// after one warm-up pass. Runs on the calling thread only. The "all" row
// is the mean over categories.
BenchTable bench_predict(const std::vector<BenchCategory>& categories,
                         const std::vector<SparseVector>& probes, int reps);

// Ratio of two "all"-row cells, e.g. dual over primal.
double bench_ratio(const BenchTable& table, const std::string& numerator_col,
                   const std::string& denominator_col);

struct CategoryHistogram {
  std::vector<std::pair<std::string, std::size_t>> per_category;  // sorted
  std::map<std::size_t, std::size_t> per_label_count;
};

CategoryHistogram category_histogram(const Corpus& corpus);
std::string histogram_tsv(const CategoryHistogram& h);

// Plain column-aligned report tables.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table(const TextTable& t);
std::string table_tsv(const TextTable& t);

// Per-category precision/recall pairs, one pair of columns per kernel,
// macro row appended. P and R are indexed [kernel][category].
TextTable precision_recall_table(const std::vector<std::string>& categories,
                                 const std::vector<std::string>& kernels,
                                 const std::vector<std::vector<double>>& P,
                                 const std::vector<std::vector<double>>& R);

// Per-category F1, one column per kernel, macro row appended.
TextTable f1_table(const std::vector<std::string>& categories,
                   const std::vector<std::string>& kernels,
                   const std::vector<std::vector<double>>& F);

TextTable timing_table(const BenchTable& bench);

// One row per kernel: F-score, precision, recall.
TextTable summary_table(const std::vector<std::string>& kernels,
                        const std::vector<double>& F,
                        const std::vector<double>& P,
                        const std::vector<double>& R);

}  // namespace ndksvm
