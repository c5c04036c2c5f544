#include "ndksvm/evalbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "ndksvm/error.hpp"

namespace ndksvm {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0,
                  std::chrono::steady_clock::time_point t1) {
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Splits [0, n) into `workers` contiguous chunks and runs fn(i) on each
// index; the first exception thrown by any chunk is rethrown here.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers < 1) throw Error("worker count must be >= 1");
  std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(w);
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

TrainingSet MultiLabelData::training_set(std::size_t cat) const {
  if (cat >= categories.size()) throw Error("category index out of range");
  return TrainingSet{features[cat], labels[cat]};
}

void MultiLabelData::validate() const {
  if (categories.empty()) throw Error("dataset has no categories");
  if (features.size() != categories.size() || labels.size() != categories.size())
    throw Error("dataset row counts do not match category count");
  std::size_t docs = features[0].size();
  for (std::size_t c = 0; c < categories.size(); ++c) {
    if (features[c].size() != docs || labels[c].size() != docs)
      throw Error("dataset document counts differ between categories");
    for (int y : labels[c])
      if (y != 1 && y != -1) throw Error("labels must be +1 or -1");
  }
}

MultiLabelData make_dataset(const Corpus& corpus, const Vocabulary& vocab,
                            const CategoryStats& stats, FeatureMode mode,
                            const std::set<std::string>& stopwords) {
  MultiLabelData out;
  out.categories = stats.categories;
  std::size_t n_cats = stats.categories.size();
  std::size_t n_docs = corpus.docs.size();
  out.features.assign(n_cats, {});
  out.labels.assign(n_cats, {});
  for (std::size_t c = 0; c < n_cats; ++c) {
    out.features[c].reserve(n_docs);
    out.labels[c].reserve(n_docs);
  }

  for (const Document& doc : corpus.docs) {
    if (mode == FeatureMode::TfidfOnly) {
      // Weights ignore the category; featurize once and share.
      SparseVector x = featurize(doc, vocab, stats,
                                 stats.categories.empty() ? "" : stats.categories[0],
                                 mode, stopwords);
      for (std::size_t c = 0; c < n_cats; ++c) out.features[c].push_back(x);
    } else {
      for (std::size_t c = 0; c < n_cats; ++c)
        out.features[c].push_back(
            featurize(doc, vocab, stats, stats.categories[c], mode, stopwords));
    }
    for (std::size_t c = 0; c < n_cats; ++c) {
      bool member = std::find(doc.categories.begin(), doc.categories.end(),
                              stats.categories[c]) != doc.categories.end();
      out.labels[c].push_back(member ? 1 : -1);
    }
  }
  return out;
}

std::vector<std::size_t> assign_from_values(const std::vector<double>& values,
                                            AssignmentMode mode) {
  if (values.empty()) throw Error("no decision values to assign from");
  std::vector<std::size_t> picked;
  for (std::size_t c = 0; c < values.size(); ++c)
    if (values[c] >= 0.0) picked.push_back(c);
  if (picked.empty() && mode == AssignmentMode::BestValueFallback) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < values.size(); ++c)
      if (values[c] > values[best]) best = c;
    picked.push_back(best);
  }
  return picked;
}

void MultiLabelClassifier::validate() const {
  if (categories.empty()) throw Error("classifier has no categories");
  if (models.size() != categories.size())
    throw Error("classifier model count does not match category count");
  if (!fast.empty() && fast.size() != categories.size())
    throw Error("precomputed-form count does not match category count");
  if (!primal.empty() && primal.size() != categories.size())
    throw Error("primal-form count does not match category count");
}

void MultiLabelClassifier::attach_fast_paths() {
  validate();
  fast.assign(categories.size(), std::nullopt);
  primal.assign(categories.size(), std::nullopt);
  for (std::size_t c = 0; c < models.size(); ++c) {
    if (models[c].kernel.tag() != KernelTag::Ndk) continue;
    fast[c] = precompute_dual(models[c]);
    if (models[c].kernel.ndk_params().c >= 0.0) primal[c] = build_complex_primal(models[c]);
  }
}

double MultiLabelClassifier::decide_value(std::size_t cat, const SparseVector& x) const {
  if (cat >= models.size()) throw Error("category index out of range");
  switch (path) {
    case DecisionPath::Dual:
      return decide_dual(models[cat], x).value;
    case DecisionPath::Precomputed:
      if (cat >= fast.size() || !fast[cat])
        throw Error("precomputed form not attached for category " + categories[cat]);
      return decide_precomputed(*fast[cat], x).value;
    case DecisionPath::Primal:
      if (cat >= primal.size() || !primal[cat])
        throw Error("primal form not attached for category " + categories[cat]);
      return decide_complex_primal(*primal[cat], x).value;
  }
  throw Error("unknown decision path");
}

std::vector<std::size_t> MultiLabelClassifier::assign(
    const std::vector<const SparseVector*>& per_cat_x) const {
  if (per_cat_x.size() != categories.size())
    throw Error("assign needs one feature vector per category");
  std::vector<double> values(categories.size());
  for (std::size_t c = 0; c < categories.size(); ++c)
    values[c] = decide_value(c, *per_cat_x[c]);
  return assign_from_values(values, mode);
}

EvalReport evaluate(const MultiLabelClassifier& clf, const MultiLabelData& test) {
  clf.validate();
  test.validate();
  if (clf.categories != test.categories)
    throw Error("classifier and dataset categories differ");

  std::size_t n_cats = clf.categories.size();
  std::size_t n_docs = test.n_docs();
  std::vector<double> tp(n_cats, 0.0), fp(n_cats, 0.0), fn(n_cats, 0.0);
  std::vector<double> cat_ms(n_cats, 0.0);

  std::vector<double> values(n_cats);
  for (std::size_t i = 0; i < n_docs; ++i) {
    for (std::size_t c = 0; c < n_cats; ++c) {
      auto t0 = std::chrono::steady_clock::now();
      values[c] = clf.decide_value(c, test.features[c][i]);
      auto t1 = std::chrono::steady_clock::now();
      cat_ms[c] += elapsed_ms(t0, t1);
    }
    std::vector<std::size_t> picked = assign_from_values(values, clf.mode);
    std::vector<char> predicted(n_cats, 0);
    for (std::size_t c : picked) predicted[c] = 1;
    for (std::size_t c = 0; c < n_cats; ++c) {
      bool truth = test.labels[c][i] == 1;
      if (predicted[c] && truth) tp[c] += 1.0;
      else if (predicted[c] && !truth) fp[c] += 1.0;
      else if (!predicted[c] && truth) fn[c] += 1.0;
    }
  }

  EvalReport rep;
  rep.categories = clf.categories;
  rep.per_category_ms = cat_ms;
  for (std::size_t c = 0; c < n_cats; ++c) {
    double p = safe_div(tp[c], tp[c] + fp[c]);
    double r = safe_div(tp[c], tp[c] + fn[c]);
    rep.precision.push_back(p);
    rep.recall.push_back(r);
    rep.f1.push_back(safe_div(2.0 * p * r, p + r));
    rep.total_ms += cat_ms[c];
  }
  rep.macro_precision = mean(rep.precision);
  rep.macro_recall = mean(rep.recall);
  rep.macro_f1 = mean(rep.f1);
  switch (clf.path) {
    case DecisionPath::Dual: rep.path_name = "dual"; break;
    case DecisionPath::Precomputed: rep.path_name = "precomputed"; break;
    case DecisionPath::Primal: rep.path_name = "primal"; break;
  }
  return rep;
}

std::vector<SvmModel> train_one_vs_rest(const MultiLabelData& data,
                                        const KernelSpec& kernel,
                                        const SmoConfig& cfg, int workers) {
  data.validate();
  cfg.validate();
  std::vector<SvmModel> models(data.categories.size());
  parallel_for(data.categories.size(), workers, [&](std::size_t c) {
    SmoConfig per_cat = cfg;
    per_cat.seed = cfg.seed + c;
    models[c] = smo_train(data.training_set(c), kernel, per_cat);
  });
  return models;
}

double tune_bias(const SvmModel& model, const std::vector<SparseVector>& xs,
                 const std::vector<int>& ys) {
  if (xs.empty() || xs.size() != ys.size())
    throw Error("bias tuning needs matching non-empty features and labels");

  std::vector<double> scores(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    scores[i] = decide_dual(model, xs[i]).value;

  std::size_t n_pos = 0;
  for (int y : ys) {
    if (y != 1 && y != -1) throw Error("labels must be +1 or -1");
    if (y == 1) ++n_pos;
  }

  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  if (n_pos == 0) return model.bias - (sorted.back() + 1.0);

  // Predict positive iff score >= cutoff; shifting bias by -cutoff makes
  // the standard >= 0 rule reproduce that choice.
  std::vector<double> cuts;
  cuts.push_back(sorted.front() - 1.0);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    cuts.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  cuts.push_back(sorted.back() + 1.0);
  cuts.push_back(0.0);

  double best_f1 = -1.0, best_cut = 0.0;
  for (double cut : cuts) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      bool pred = scores[i] >= cut;
      if (pred && ys[i] == 1) tp += 1.0;
      else if (pred && ys[i] == -1) fp += 1.0;
      else if (!pred && ys[i] == 1) fn += 1.0;
    }
    double p = safe_div(tp, tp + fp);
    double r = safe_div(tp, tp + fn);
    double f1 = safe_div(2.0 * p * r, p + r);
    if (f1 > best_f1 + 1e-15 ||
        (std::abs(f1 - best_f1) <= 1e-15 && std::abs(cut) < std::abs(best_cut))) {
      best_f1 = f1;
      best_cut = cut;
    }
  }
  return model.bias - best_cut;
}

GridResult grid_search(const MultiLabelData& train, const MultiLabelData& val,
                       const std::vector<GridPoint>& grid, int workers) {
  if (grid.empty()) throw Error("empty parameter grid");
  train.validate();
  val.validate();
  if (train.categories != val.categories)
    throw Error("train and validation categories differ");

  GridResult result;
  result.table.resize(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t g) {
    result.table[g].point = grid[g];
    double score;
    try {
      // Workers parallelize over grid points, so categories run serially.
      std::vector<SvmModel> models = train_one_vs_rest(train, grid[g].kernel, grid[g].smo, 1);
      MultiLabelClassifier clf;
      clf.categories = train.categories;
      clf.models = std::move(models);
      clf.mode = AssignmentMode::IndependentThreshold;
      score = evaluate(clf, val).macro_f1;
    } catch (const ConvergenceError&) {
      score = -1.0;  // stays in the table, never wins
    }
    result.table[g].macro_f1 = score;
  });

  std::size_t best = grid.size();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (result.table[g].macro_f1 < 0.0) continue;
    if (best == grid.size() || result.table[g].macro_f1 > result.table[best].macro_f1)
      best = g;
  }
  if (best == grid.size())
    throw Error("every grid point failed to converge");
  result.best = grid[best];
  result.best_index = best;
  return result;
}

std::vector<GridPoint> default_grid(KernelTag tag, const SmoConfig& base,
                                    int poly_degree) {
  const std::vector<double> c_grid = {0.1, 1.0, 10.0, 100.0};
  std::vector<KernelSpec> specs;
  switch (tag) {
    case KernelTag::Linear:
      specs.push_back(KernelSpec::linear());
      break;
    case KernelTag::Polynomial:
      for (double a : {0.5, 1.0, 2.0})
        for (double c : {0.0, 1.0})
          specs.push_back(KernelSpec::polynomial(a, c, poly_degree));
      break;
    case KernelTag::Rbf:
      for (int k = -7; k <= 3; ++k)
        specs.push_back(KernelSpec::rbf(std::ldexp(1.0, k)));
      break;
    case KernelTag::Ndk:
      for (int k = -5; k <= 3; ++k)
        for (double c : {0.0, 1.0, 10.0})
          specs.push_back(KernelSpec::ndk(std::ldexp(1.0, k), c));
      break;
  }
  std::vector<GridPoint> grid;
  for (const KernelSpec& spec : specs)
    for (double C : c_grid) {
      GridPoint p{spec, base};
      p.smo.C = C;
      grid.push_back(p);
    }
  return grid;
}

TrainingSet oversample_to_ratio(const TrainingSet& ts, double target_ratio,
                                std::uint64_t seed) {
  ts.validate();
  if (!(target_ratio > 0.0 && target_ratio < 1.0))
    throw Error("target ratio must lie in (0, 1)");

  std::vector<std::size_t> pos_idx;
  for (std::size_t i = 0; i < ts.labels.size(); ++i)
    if (ts.labels[i] == 1) pos_idx.push_back(i);
  std::size_t n_pos = pos_idx.size();
  std::size_t n_neg = ts.labels.size() - n_pos;
  if (n_pos == 0) throw Error("cannot oversample a set with no positives");

  double current = static_cast<double>(n_pos) / static_cast<double>(n_pos + n_neg);
  if (current >= target_ratio) return ts;

  // Smallest positive count p with p / (p + n_neg) >= target.
  auto needed = static_cast<std::size_t>(
      std::ceil(target_ratio * static_cast<double>(n_neg) / (1.0 - target_ratio) - 1e-9));
  TrainingSet out = ts;
  std::mt19937_64 rng(seed);
  for (std::size_t d = n_pos; d < needed; ++d) {
    std::size_t pick = pos_idx[rng() % n_pos];
    out.vectors.push_back(ts.vectors[pick]);
    out.labels.push_back(1);
  }
  return out;
}

std::vector<TrainingSet> balance_oversample(
    const std::vector<TrainingSet>& per_category, std::uint64_t seed,
    double target_ratio) {
  if (per_category.empty()) throw Error("no categories to balance");
  double target = target_ratio;
  if (target <= 0.0) {
    for (const TrainingSet& ts : per_category) {
      std::size_t n_pos = 0;
      for (int y : ts.labels)
        if (y == 1) ++n_pos;
      if (!ts.labels.empty())
        target = std::max(target, static_cast<double>(n_pos) /
                                      static_cast<double>(ts.labels.size()));
    }
    if (!(target > 0.0)) throw Error("no positives in any category");
    if (target >= 1.0) target = 1.0 - 1e-12;
  }
  std::vector<TrainingSet> out;
  out.reserve(per_category.size());
  for (std::size_t c = 0; c < per_category.size(); ++c)
    out.push_back(oversample_to_ratio(per_category[c], target, seed + c));
  return out;
}

BenchTable bench_predict(const std::vector<BenchCategory>& categories,
                         const std::vector<SparseVector>& probes, int reps) {
  if (categories.empty()) throw Error("nothing to benchmark");
  if (probes.empty()) throw Error("benchmark needs probe vectors");
  if (reps < 5) throw Error("benchmark needs at least 5 repetitions");

  BenchTable table;
  table.n_probes = probes.size();
  table.reps = reps;
  for (const BenchCategory& cat : categories) {
    table.row_names.push_back(cat.name);
    for (const BenchPath& path : cat.paths)
      if (std::find(table.col_names.begin(), table.col_names.end(), path.name) ==
          table.col_names.end())
        table.col_names.push_back(path.name);
  }
  table.row_names.push_back("all");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.median_ms.assign(table.row_names.size(),
                         std::vector<double>(table.col_names.size(), nan));

  // sink defeats dead-code elimination of the timed calls
  volatile double sink = 0.0;
  for (std::size_t r = 0; r < categories.size(); ++r) {
    for (const BenchPath& path : categories[r].paths) {
      std::size_t col = static_cast<std::size_t>(
          std::find(table.col_names.begin(), table.col_names.end(), path.name) -
          table.col_names.begin());
      for (const SparseVector& x : probes) sink = sink + path.decide(x);
      std::vector<double> samples;
      samples.reserve(static_cast<std::size_t>(reps));
      for (int rep = 0; rep < reps; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        for (const SparseVector& x : probes) sink = sink + path.decide(x);
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(elapsed_ms(t0, t1));
      }
      table.median_ms[r][col] = median(samples);
    }
  }

  std::size_t all_row = table.row_names.size() - 1;
  for (std::size_t col = 0; col < table.col_names.size(); ++col) {
    std::vector<double> cells;
    for (std::size_t r = 0; r < all_row; ++r)
      if (!std::isnan(table.median_ms[r][col])) cells.push_back(table.median_ms[r][col]);
    table.median_ms[all_row][col] = cells.empty() ? nan : mean(cells);
  }
  return table;
}

double bench_ratio(const BenchTable& table, const std::string& numerator_col,
                   const std::string& denominator_col) {
  auto col_of = [&](const std::string& name) {
    auto it = std::find(table.col_names.begin(), table.col_names.end(), name);
    if (it == table.col_names.end()) throw Error("unknown benchmark column: " + name);
    return static_cast<std::size_t>(it - table.col_names.begin());
  };
  if (table.row_names.empty() || table.row_names.back() != "all")
    throw Error("benchmark table has no summary row");
  std::size_t all_row = table.row_names.size() - 1;
  double num = table.median_ms[all_row][col_of(numerator_col)];
  double den = table.median_ms[all_row][col_of(denominator_col)];
  if (!(den > 0.0)) throw Error("benchmark denominator is not positive");
  return num / den;
}

CategoryHistogram category_histogram(const Corpus& corpus) {
  CategoryHistogram h;
  std::map<std::string, std::size_t> counts;
  for (const Document& doc : corpus.docs) {
    for (const std::string& cat : doc.categories) ++counts[cat];
    ++h.per_label_count[doc.categories.size()];
  }
  h.per_category.assign(counts.begin(), counts.end());
  return h;
}

std::string histogram_tsv(const CategoryHistogram& h) {
  std::string out = "category\tdocs\n";
  for (const auto& [cat, n] : h.per_category)
    out += cat + "\t" + std::to_string(n) + "\n";
  out += "\nlabels_per_doc\tdocs\n";
  for (const auto& [k, n] : h.per_label_count)
    out += std::to_string(k) + "\t" + std::to_string(n) + "\n";
  return out;
}

std::string render_table(const TextTable& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);

  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < width.size(); ++i) {
      std::string cell = i < row.size() ? row[i] : "";
      cell.resize(width[i], ' ');
      out += cell;
      out += i + 1 < width.size() ? "  " : "";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  };
  emit(t.header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& row : t.rows) emit(row);
  return out;
}

std::string table_tsv(const TextTable& t) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += i + 1 < row.size() ? "\t" : "";
    }
    out += "\n";
  };
  emit(t.header);
  for (const auto& row : t.rows) emit(row);
  return out;
}

namespace {

// Appends a macro-average row labeled "All" over the metric columns.
void append_macro_row(TextTable& t, std::size_t metric_cols) {
  std::vector<std::string> row{"All"};
  for (std::size_t j = 0; j < metric_cols; ++j) {
    long double s = 0.0L;
    for (const auto& r : t.rows) s += std::strtod(r[j + 1].c_str(), nullptr);
    row.push_back(fmt("%.3f", static_cast<double>(s / t.rows.size())));
  }
  t.rows.push_back(std::move(row));
}

}  // namespace

TextTable precision_recall_table(const std::vector<std::string>& categories,
                                 const std::vector<std::string>& kernels,
                                 const std::vector<std::vector<double>>& P,
                                 const std::vector<std::vector<double>>& R) {
  if (P.size() != kernels.size() || R.size() != kernels.size())
    throw Error("metric matrix shape does not match kernel list");
  TextTable t;
  t.header.push_back("Cat.");
  for (const std::string& k : kernels) {
    t.header.push_back(k + " P");
    t.header.push_back(k + " R");
  }
  for (std::size_t c = 0; c < categories.size(); ++c) {
    std::vector<std::string> row{categories[c]};
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      if (P[k].size() != categories.size() || R[k].size() != categories.size())
        throw Error("metric matrix shape does not match category list");
      row.push_back(fmt("%.3f", P[k][c]));
      row.push_back(fmt("%.3f", R[k][c]));
    }
    t.rows.push_back(std::move(row));
  }
  append_macro_row(t, 2 * kernels.size());
  return t;
}

TextTable f1_table(const std::vector<std::string>& categories,
                   const std::vector<std::string>& kernels,
                   const std::vector<std::vector<double>>& F) {
  if (F.size() != kernels.size())
    throw Error("metric matrix shape does not match kernel list");
  TextTable t;
  t.header.push_back("Cat.");
  for (const std::string& k : kernels) t.header.push_back(k + " F");
  for (std::size_t c = 0; c < categories.size(); ++c) {
    std::vector<std::string> row{categories[c]};
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      if (F[k].size() != categories.size())
        throw Error("metric matrix shape does not match category list");
      row.push_back(fmt("%.3f", F[k][c]));
    }
    t.rows.push_back(std::move(row));
  }
  append_macro_row(t, kernels.size());
  return t;
}

TextTable timing_table(const BenchTable& bench) {
  TextTable t;
  t.header.push_back("Cat.");
  for (const std::string& c : bench.col_names) t.header.push_back(c + " ms");
  for (std::size_t r = 0; r < bench.row_names.size(); ++r) {
    std::vector<std::string> row{bench.row_names[r]};
    for (std::size_t c = 0; c < bench.col_names.size(); ++c) {
      double v = bench.median_ms[r][c];
      row.push_back(std::isnan(v) ? "-" : fmt("%.1f", v));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TextTable summary_table(const std::vector<std::string>& kernels,
                        const std::vector<double>& F,
                        const std::vector<double>& P,
                        const std::vector<double>& R) {
  if (F.size() != kernels.size() || P.size() != kernels.size() || R.size() != kernels.size())
    throw Error("summary metric lengths do not match kernel list");
  TextTable t;
  t.header = {"Kernel", "F-score", "Precision", "Recall"};
  for (std::size_t k = 0; k < kernels.size(); ++k)
    t.rows.push_back({kernels[k], fmt("%.3f", F[k]), fmt("%.3f", P[k]), fmt("%.3f", R[k])});
  return t;
}

}  // namespace ndksvm
