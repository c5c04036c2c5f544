// Command-line front end: featurize / train / predict / eval / bench /
// gridsearch. Machine-readable TSV goes to stdout, diagnostics and timing
// to stderr, and every command that writes files drops its resolved
// configuration next to them as <output>.run.json. Exit codes: 0 success,
// 1 usage, 2 I/O, 3 numeric or convergence failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndksvm/error.hpp"
#include "ndksvm/evalbench.hpp"
#include "ndksvm/kernel.hpp"
#include "ndksvm/model_io.hpp"
#include "ndksvm/ndk_fast.hpp"
#include "ndksvm/sparse_io.hpp"
#include "ndksvm/svm.hpp"
#include "ndksvm/textfeat.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ndksvm;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

struct KernelFlags {
  std::string name = "ndk";
  double a = 1.0;
  double c = 0.0;
  double gamma = 1.0;
  int degree = 2;
  bool allow_negative_c = false;
};

struct SmoFlags {
  double C = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  long max_iters = 1000000;
  std::uint64_t seed = 1;
  std::size_t cache_rows = 512;
};

void add_kernel_flags(CLI::App* sub, KernelFlags& kf) {
  sub->add_option("--kernel", kf.name, "kernel: linear, poly, rbf, ndk")
      ->capture_default_str();
  sub->add_option("--a", kf.a, "scale for poly and ndk kernels")->capture_default_str();
  sub->add_option("--c", kf.c, "offset for poly and ndk kernels")->capture_default_str();
  sub->add_option("--gamma", kf.gamma, "rbf width")->capture_default_str();
  sub->add_option("--degree", kf.degree, "poly degree")->capture_default_str();
  sub->add_flag("--allow-negative-c", kf.allow_negative_c,
                "permit c < 0 for the ndk kernel (dual path only)");
}

void add_smo_flags(CLI::App* sub, SmoFlags& sf) {
  sub->add_option("--C", sf.C, "box constraint")->capture_default_str();
  sub->add_option("--tol", sf.tol, "KKT tolerance")->capture_default_str();
  sub->add_option("--max-passes", sf.max_passes, "sweeps without progress before a round ends")
      ->capture_default_str();
  sub->add_option("--max-iters", sf.max_iters, "hard step budget")->capture_default_str();
  sub->add_option("--seed", sf.seed, "run seed")->capture_default_str();
  sub->add_option("--cache-rows", sf.cache_rows, "kernel rows kept in memory")
      ->capture_default_str();
}

KernelSpec make_kernel(const KernelFlags& kf) {
  if (kf.name == "linear") return KernelSpec::linear();
  if (kf.name == "poly") return KernelSpec::polynomial(kf.a, kf.c, kf.degree);
  if (kf.name == "rbf") return KernelSpec::rbf(kf.gamma);
  if (kf.name == "ndk") return KernelSpec::ndk(kf.a, kf.c, kf.allow_negative_c);
  throw Error("unknown kernel: " + kf.name);
}

SmoConfig make_smo(const SmoFlags& sf) {
  SmoConfig cfg;
  cfg.C = sf.C;
  cfg.tol = sf.tol;
  cfg.max_passes = sf.max_passes;
  cfg.max_iters = sf.max_iters;
  cfg.seed = sf.seed;
  cfg.cache_rows = sf.cache_rows;
  cfg.validate();
  return cfg;
}

json kernel_config(const KernelFlags& kf) {
  json j;
  j["name"] = kf.name;
  if (kf.name == "poly" || kf.name == "ndk") {
    j["a"] = kf.a;
    j["c"] = kf.c;
  }
  if (kf.name == "poly") j["degree"] = kf.degree;
  if (kf.name == "rbf") j["gamma"] = kf.gamma;
  if (kf.name == "ndk") j["allow_negative_c"] = kf.allow_negative_c;
  return j;
}

json smo_config_json(const SmoFlags& sf) {
  return json{{"C", sf.C},
              {"tol", sf.tol},
              {"max_passes", sf.max_passes},
              {"max_iters", sf.max_iters},
              {"seed", sf.seed},
              {"cache_rows", sf.cache_rows}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

// Deterministic pretty JSON; nlohmann objects iterate in key order.
void write_run_config(const std::string& output_path, json j) {
  write_text_file(output_path + ".run.json", j.dump(2) + "\n");
}

std::vector<int> int_labels(const std::vector<double>& raw, const std::string& origin) {
  std::vector<int> out;
  out.reserve(raw.size());
  for (double y : raw) {
    if (y == 1.0)
      out.push_back(1);
    else if (y == -1.0)
      out.push_back(-1);
    else
      throw IoError(origin + ": labels must be +1 or -1");
  }
  return out;
}

std::vector<double> double_labels(const std::vector<int>& ys) {
  return std::vector<double>(ys.begin(), ys.end());
}

void check_category_name(const std::string& cat) {
  if (cat.empty()) throw IoError("empty category name");
  for (char ch : cat) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
              (ch >= '0' && ch <= '9') || ch == '-' || ch == '_' || ch == '.';
    if (!ok)
      throw IoError("category name not usable in file names: " + cat);
  }
}

// `<prefix>.categories.tsv`: name, index, training docs per line.
void write_categories_file(const std::string& prefix, const CategoryStats& stats) {
  std::string out;
  for (std::size_t c = 0; c < stats.categories.size(); ++c)
    out += stats.categories[c] + "\t" + std::to_string(c) + "\t" +
           std::to_string(stats.docs_per_cat[c]) + "\n";
  write_text_file(prefix + ".categories.tsv", out);
}

std::vector<std::string> read_category_names(const std::string& prefix) {
  const std::string path = prefix + ".categories.tsv";
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::string> cats;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    cats.push_back(line.substr(0, tab));
  }
  if (cats.empty()) throw IoError("no categories listed in " + path);
  return cats;
}

std::string split_file(const std::string& prefix, const std::string& cat,
                       const std::string& split) {
  return prefix + "." + cat + "." + split + ".svm";
}

// ---------------------------------------------------------------- featurize

struct FeaturizeOpts {
  std::string corpus_dir, labels_file, out_prefix;
  std::string mode = "tfidf";
  std::string stopwords_file;
  double train_frac = 0.6, val_frac = 0.2;
  std::uint64_t seed = 1;
};

void run_featurize(const FeaturizeOpts& o) {
  Timer timer;
  if (!(o.train_frac > 0.0 && o.val_frac >= 0.0 && o.train_frac + o.val_frac <= 1.0))
    throw Error("split fractions must satisfy train > 0, val >= 0, train + val <= 1");
  FeatureMode mode;
  if (o.mode == "tfidf")
    mode = FeatureMode::TfidfOnly;
  else if (o.mode == "gm")
    mode = FeatureMode::GeometricMean;
  else
    throw Error("unknown feature mode: " + o.mode + " (expected tfidf or gm)");

  Corpus corpus = load_corpus(o.corpus_dir, o.labels_file);
  std::set<std::string> stopwords;
  if (!o.stopwords_file.empty()) stopwords = load_stopwords(o.stopwords_file);

  CorpusSplit split = split_corpus(corpus, o.train_frac, o.val_frac, o.seed);
  if (split.train.docs.empty()) throw Error("training split is empty");
  Vocabulary vocab = build_vocabulary(split.train, stopwords);
  if (vocab.size() == 0) throw Error("training split produced an empty vocabulary");
  CategoryStats stats = build_category_stats(split.train, vocab);
  for (const std::string& cat : stats.categories) check_category_name(cat);

  const std::pair<const char*, const Corpus*> parts[] = {
      {"train", &split.train}, {"val", &split.val}, {"test", &split.test}};
  for (const auto& [name, part] : parts) {
    if (part->docs.empty()) continue;
    MultiLabelData ds = make_dataset(*part, vocab, stats, mode, stopwords);
    for (std::size_t c = 0; c < ds.categories.size(); ++c)
      write_sparse_file(split_file(o.out_prefix, ds.categories[c], name),
                        double_labels(ds.labels[c]), ds.features[c]);
  }

  save_vocabulary(o.out_prefix + ".vocab.tsv", vocab);
  write_categories_file(o.out_prefix, stats);
  write_text_file(o.out_prefix + ".histogram.tsv", histogram_tsv(category_histogram(corpus)));

  std::string split_tsv;
  std::map<std::string, const char*> split_of;
  for (const auto& [name, part] : parts)
    for (const Document& d : part->docs) split_of[d.id] = name;
  for (const Document& d : corpus.docs)
    split_tsv += d.id + std::string("\t") + split_of.at(d.id) + "\n";
  write_text_file(o.out_prefix + ".split.tsv", split_tsv);

  write_run_config(o.out_prefix,
                   json{{"command", "featurize"},
                        {"corpus_dir", o.corpus_dir},
                        {"labels_file", o.labels_file},
                        {"out_prefix", o.out_prefix},
                        {"mode", o.mode},
                        {"stopwords_file", o.stopwords_file},
                        {"train_frac", o.train_frac},
                        {"val_frac", o.val_frac},
                        {"seed", o.seed}});

  std::cerr << "featurize: " << corpus.docs.size() << " docs, " << vocab.size()
            << " terms, " << stats.categories.size() << " categories ("
            << split.train.docs.size() << "/" << split.val.docs.size() << "/"
            << split.test.docs.size() << " split) in " << timer.ms() << " ms\n";
}

// -------------------------------------------------------------------- train

struct TrainOpts {
  std::string data, model_out, heldout;
  KernelFlags kernel;
  SmoFlags smo;
  std::size_t dim = 0;
  double oversample = 0.0;
  bool tune = false;
  bool precompute = false;
};

void run_train(const TrainOpts& o) {
  Timer timer;
  SparseFile f = read_sparse_file(o.data, o.dim);
  TrainingSet ts{f.vectors, int_labels(f.labels, o.data)};
  if (o.oversample > 0.0) ts = oversample_to_ratio(ts, o.oversample, o.smo.seed);

  KernelSpec kernel = make_kernel(o.kernel);
  SmoConfig cfg = make_smo(o.smo);
  SvmModel model = smo_train(ts, kernel, cfg);

  if (o.tune) {
    if (o.heldout.empty()) throw Error("--tune-bias needs --heldout FILE");
    SparseFile h = read_sparse_file(o.heldout, model.dim);
    model.bias = tune_bias(model, h.vectors, int_labels(h.labels, o.heldout));
  }

  std::optional<NdkFastModel> fast;
  std::optional<ComplexPrimalModel> primal;
  if (o.precompute) {
    if (kernel.tag() != KernelTag::Ndk)
      throw Error("--precompute applies to the ndk kernel only");
    fast = precompute_dual(model);
    if (kernel.ndk_params().c >= 0.0) primal = build_complex_primal(model);
  }
  save_model(o.model_out, model, fast ? &*fast : nullptr, primal ? &*primal : nullptr);

  json j{{"command", "train"},
         {"data", o.data},
         {"model", o.model_out},
         {"heldout", o.heldout},
         {"dim", o.dim},
         {"oversample", o.oversample},
         {"tune_bias", o.tune},
         {"precompute", o.precompute},
         {"kernel", kernel_config(o.kernel)},
         {"smo", smo_config_json(o.smo)}};
  write_run_config(o.model_out, j);

  std::cerr << "train: " << ts.size() << " rows -> " << model.n_svs()
            << " support vectors, bias " << model.bias << " in " << timer.ms() << " ms\n";
}

// ------------------------------------------------------------------ predict

DecisionPath parse_path(const std::string& s) {
  if (s == "dual") return DecisionPath::Dual;
  if (s == "precomputed") return DecisionPath::Precomputed;
  if (s == "primal") return DecisionPath::Primal;
  throw Error("unknown path: " + s + " (expected dual, precomputed or primal)");
}

// Fills in whichever folded form the chosen path needs but the file did
// not carry. Non-ndk kernels only support the dual route.
void ensure_path(LoadedModel& lm, DecisionPath path) {
  if (path == DecisionPath::Dual) return;
  if (lm.model.kernel.tag() != KernelTag::Ndk)
    throw Error("path requires the ndk kernel; model uses " + lm.model.kernel.description());
  if (path == DecisionPath::Precomputed && !lm.fast) lm.fast = precompute_dual(lm.model);
  if (path == DecisionPath::Primal && !lm.primal) lm.primal = build_complex_primal(lm.model);
}

double decide_on_path(const LoadedModel& lm, DecisionPath path, const SparseVector& x) {
  switch (path) {
    case DecisionPath::Dual: return decide_dual(lm.model, x).value;
    case DecisionPath::Precomputed: return decide_precomputed(*lm.fast, x).value;
    case DecisionPath::Primal: return decide_complex_primal(*lm.primal, x).value;
  }
  throw Error("unknown decision path");
}

struct PredictOpts {
  std::string model, data;
  std::string path = "dual";
};

void run_predict(const PredictOpts& o) {
  LoadedModel lm = load_model(o.model);
  DecisionPath path = parse_path(o.path);
  ensure_path(lm, path);
  SparseFile f = read_sparse_file(o.data, lm.model.dim);

  Timer timer;
  std::string out = "index\tlabel\tvalue\n";
  for (std::size_t i = 0; i < f.vectors.size(); ++i) {
    double v = decide_on_path(lm, path, f.vectors[i]);
    out += std::to_string(i) + "\t" + (v >= 0.0 ? "+1" : "-1") + "\t" + format_double(v) + "\n";
  }
  double ms = timer.ms();
  std::cout << out;
  std::cerr << "predict: " << f.vectors.size() << " rows on path " << o.path << " in "
            << ms << " ms\n";
}

// --------------------------------------------------------------------- eval

AssignmentMode parse_mode(const std::string& s) {
  if (s == "independent") return AssignmentMode::IndependentThreshold;
  if (s == "fallback") return AssignmentMode::BestValueFallback;
  throw Error("unknown assignment mode: " + s + " (expected independent or fallback)");
}

struct EvalOpts {
  std::string models_dir, data_prefix;
  std::string split = "test";
  std::string mode = "fallback";
  std::string path = "dual";
  std::string format = "tsv";
};

void run_eval(const EvalOpts& o) {
  std::vector<std::string> cats = read_category_names(o.data_prefix);
  DecisionPath path = parse_path(o.path);

  MultiLabelClassifier clf;
  clf.categories = cats;
  clf.mode = parse_mode(o.mode);
  clf.path = path;
  MultiLabelData test;
  test.categories = cats;
  for (const std::string& cat : cats) {
    LoadedModel lm = load_model(o.models_dir + "/" + cat + ".model");
    ensure_path(lm, path);
    clf.models.push_back(std::move(lm.model));
    clf.fast.push_back(std::move(lm.fast));
    clf.primal.push_back(std::move(lm.primal));
    SparseFile f =
        read_sparse_file(split_file(o.data_prefix, cat, o.split), clf.models.back().dim);
    test.features.push_back(std::move(f.vectors));
    test.labels.push_back(int_labels(f.labels, cat));
  }

  EvalReport rep = evaluate(clf, test);

  TextTable t;
  t.header = {"Cat.", "P", "R", "F"};
  char buf[64];
  auto cell = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (std::size_t c = 0; c < cats.size(); ++c)
    t.rows.push_back({cats[c], cell(rep.precision[c]), cell(rep.recall[c]), cell(rep.f1[c])});
  t.rows.push_back(
      {"All", cell(rep.macro_precision), cell(rep.macro_recall), cell(rep.macro_f1)});
  std::cout << (o.format == "table" ? render_table(t) : table_tsv(t));

  std::cerr << "eval: path " << rep.path_name << ", " << test.n_docs() << " docs, total "
            << rep.total_ms << " ms (per category:";
  for (std::size_t c = 0; c < cats.size(); ++c)
    std::cerr << " " << cats[c] << "=" << rep.per_category_ms[c];
  std::cerr << ")\n";
}

// -------------------------------------------------------------------- bench

struct BenchOpts {
  std::string models_dir, probes;
  int reps = 7;
  std::string format = "tsv";
};

void run_bench(const BenchOpts& o) {
  // Model files are named <category>.<kernel>.model with kernel one of
  // ndk, square, cubic, rbf, linear.
  static const std::pair<const char*, const char*> kKinds[] = {
      {"ndk", "ndk"},       {"square", "square_dual"}, {"cubic", "cubic_dual"},
      {"rbf", "rbf_dual"},  {"linear", "linear_dual"}};

  std::map<std::string, std::map<std::string, std::shared_ptr<LoadedModel>>> by_cat;
  if (!fs::is_directory(o.models_dir)) throw IoError("not a directory: " + o.models_dir);
  for (const auto& entry : fs::directory_iterator(o.models_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".model") continue;
    std::string stem = entry.path().stem().string();  // <category>.<kernel>
    std::size_t dot = stem.rfind('.');
    if (dot == std::string::npos) continue;
    std::string cat = stem.substr(0, dot), kind = stem.substr(dot + 1);
    bool known = false;
    for (const auto& [suffix, _] : kKinds) known = known || kind == suffix;
    if (!known) {
      std::cerr << "bench: skipping unrecognized model file " << entry.path() << "\n";
      continue;
    }
    by_cat[cat][kind] = std::make_shared<LoadedModel>(load_model(entry.path().string()));
  }
  if (by_cat.empty()) throw IoError("no <category>.<kernel>.model files in " + o.models_dir);

  std::size_t dim = by_cat.begin()->second.begin()->second->model.dim;
  SparseFile probes = read_sparse_file(o.probes, dim);
  if (probes.vectors.empty()) throw IoError("no probe vectors in " + o.probes);

  std::vector<BenchCategory> cats;
  for (auto& [cat, models] : by_cat) {
    BenchCategory bc;
    bc.name = cat;
    for (const auto& [suffix, column] : kKinds) {
      auto it = models.find(suffix);
      if (it == models.end()) continue;
      std::shared_ptr<LoadedModel> lm = it->second;
      if (std::string(suffix) == "ndk") {
        // The ndk model contributes its primal and dual routes; the
        // folded forms come from the file or are built here, outside the
        // timed region.
        if (lm->model.kernel.ndk_params().c >= 0.0) {
          if (!lm->primal) lm->primal = build_complex_primal(lm->model);
          bc.paths.push_back({"ndk_primal", [lm](const SparseVector& x) {
                                return decide_complex_primal(*lm->primal, x).value;
                              }});
        }
        bc.paths.push_back(
            {"ndk_dual", [lm](const SparseVector& x) { return decide_dual(lm->model, x).value; }});
      } else {
        bc.paths.push_back({column, [lm](const SparseVector& x) {
                              return decide_dual(lm->model, x).value;
                            }});
      }
    }
    cats.push_back(std::move(bc));
  }

  BenchTable table = bench_predict(cats, probes.vectors, o.reps);
  TextTable t = timing_table(table);
  std::cout << (o.format == "table" ? render_table(t) : table_tsv(t));

  auto has_col = [&](const char* name) {
    return std::find(table.col_names.begin(), table.col_names.end(), name) !=
           table.col_names.end();
  };
  if (has_col("ndk_primal") && has_col("ndk_dual")) {
    double ratio = bench_ratio(table, "ndk_dual", "ndk_primal");
    std::cout << "\nratio\tndk_dual/ndk_primal\t" << format_double(ratio) << "\n";
  }
  std::cerr << "bench: " << probes.vectors.size() << " probes x " << o.reps
            << " reps over " << cats.size() << " categories\n";
}

// --------------------------------------------------------------- gridsearch

struct GridOpts {
  std::string data_prefix;
  KernelFlags kernel;
  SmoFlags smo;
  int workers = 1;
  std::string out;
  std::string C_list, a_list, c_list, gamma_list;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("bad number in list: " + item);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error("empty number list");
  return out;
}

std::vector<GridPoint> build_grid(const GridOpts& o, const SmoConfig& base) {
  std::vector<double> Cs =
      o.C_list.empty() ? std::vector<double>{0.1, 1.0, 10.0, 100.0} : parse_list(o.C_list);

  std::vector<KernelSpec> specs;
  if (o.kernel.name == "linear") {
    specs.push_back(KernelSpec::linear());
  } else if (o.kernel.name == "poly") {
    std::vector<double> as = o.a_list.empty() ? std::vector<double>{0.5, 1.0, 2.0}
                                              : parse_list(o.a_list);
    std::vector<double> cs =
        o.c_list.empty() ? std::vector<double>{0.0, 1.0} : parse_list(o.c_list);
    for (double a : as)
      for (double c : cs) specs.push_back(KernelSpec::polynomial(a, c, o.kernel.degree));
  } else if (o.kernel.name == "rbf") {
    std::vector<double> gs;
    if (o.gamma_list.empty())
      for (int k = -7; k <= 3; ++k) gs.push_back(std::ldexp(1.0, k));
    else
      gs = parse_list(o.gamma_list);
    for (double g : gs) specs.push_back(KernelSpec::rbf(g));
  } else if (o.kernel.name == "ndk") {
    std::vector<double> as;
    if (o.a_list.empty())
      for (int k = -5; k <= 3; ++k) as.push_back(std::ldexp(1.0, k));
    else
      as = parse_list(o.a_list);
    std::vector<double> cs =
        o.c_list.empty() ? std::vector<double>{0.0, 1.0, 10.0} : parse_list(o.c_list);
    for (double a : as)
      for (double c : cs) specs.push_back(KernelSpec::ndk(a, c));
  } else {
    throw Error("unknown kernel: " + o.kernel.name);
  }

  std::vector<GridPoint> grid;
  for (const KernelSpec& spec : specs)
    for (double C : Cs) {
      GridPoint p{spec, base};
      p.smo.C = C;
      grid.push_back(p);
    }
  return grid;
}

MultiLabelData load_split_data(const std::string& prefix,
                               const std::vector<std::string>& cats,
                               const std::string& split,
                               const std::vector<std::size_t>* dims) {
  MultiLabelData data;
  data.categories = cats;
  for (std::size_t c = 0; c < cats.size(); ++c) {
    SparseFile f =
        read_sparse_file(split_file(prefix, cats[c], split), dims ? (*dims)[c] : 0);
    data.features.push_back(std::move(f.vectors));
    data.labels.push_back(int_labels(f.labels, cats[c]));
  }
  return data;
}

void run_gridsearch(const GridOpts& o) {
  Timer timer;
  std::vector<std::string> cats = read_category_names(o.data_prefix);
  MultiLabelData train = load_split_data(o.data_prefix, cats, "train", nullptr);
  std::vector<std::size_t> dims;
  for (const auto& fs_c : train.features) dims.push_back(fs_c.empty() ? 0 : fs_c[0].dim());
  MultiLabelData val = load_split_data(o.data_prefix, cats, "val", &dims);

  SmoConfig base = make_smo(o.smo);
  std::vector<GridPoint> grid = build_grid(o, base);
  GridResult res = grid_search(train, val, grid, o.workers);

  std::string out = "index\tkernel\tC\tmacro_f1\n";
  char buf[64];
  for (std::size_t g = 0; g < res.table.size(); ++g) {
    std::snprintf(buf, sizeof buf, "%.6f", res.table[g].macro_f1);
    out += std::to_string(g) + "\t" + res.table[g].point.kernel.description() + "\t" +
           format_double(res.table[g].point.smo.C) + "\t" + buf + "\n";
  }
  out += "best\t" + res.best.kernel.description() + "\t" + format_double(res.best.smo.C) +
         "\t" + std::to_string(res.best_index) + "\n";
  std::cout << out;

  if (!o.out.empty()) {
    json best{{"command", "gridsearch"},
              {"kernel_description", res.best.kernel.description()},
              {"C", res.best.smo.C},
              {"best_index", res.best_index},
              {"data_prefix", o.data_prefix},
              {"kernel_family", o.kernel.name},
              {"workers", o.workers},
              {"smo", smo_config_json(o.smo)}};
    write_text_file(o.out, best.dump(2) + "\n");
    write_run_config(o.out, best);
  }
  std::cerr << "gridsearch: " << grid.size() << " points over " << cats.size()
            << " categories in " << timer.ms() << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse SVM toolkit built around the negative-squared-distance kernel"};
  app.require_subcommand(1);

  FeaturizeOpts fo;
  CLI::App* feat = app.add_subcommand("featurize", "corpus directory -> sparse feature files");
  feat->add_option("--corpus", fo.corpus_dir, "directory of text documents")->required();
  feat->add_option("--labels", fo.labels_file, "TSV doc_id -> categories")->required();
  feat->add_option("--out", fo.out_prefix, "output path prefix")->required();
  feat->add_option("--mode", fo.mode, "feature weighting: tfidf or gm")->capture_default_str();
  feat->add_option("--stopwords", fo.stopwords_file, "one stopword per line");
  feat->add_option("--train-frac", fo.train_frac, "training fraction")->capture_default_str();
  feat->add_option("--val-frac", fo.val_frac, "validation fraction")->capture_default_str();
  feat->add_option("--seed", fo.seed, "shuffle seed")->capture_default_str();
  feat->callback([&] { run_featurize(fo); });

  TrainOpts to;
  CLI::App* train = app.add_subcommand("train", "fit one binary model from a sparse file");
  train->add_option("--data", to.data, "training file, `label idx:val ...` lines")->required();
  train->add_option("--model", to.model_out, "output model path")->required();
  train->add_option("--dim", to.dim, "feature dimension (0 = infer from data)")
      ->capture_default_str();
  train->add_option("--oversample", to.oversample,
                    "duplicate positives up to this positive ratio (0 = off)")
      ->capture_default_str();
  train->add_flag("--tune-bias", to.tune, "pick the bias maximizing F1 on --heldout");
  train->add_option("--heldout", to.heldout, "heldout file for bias tuning");
  train->add_flag("--precompute", to.precompute,
                  "store the folded ndk forms inside the model file");
  add_kernel_flags(train, to.kernel);
  add_smo_flags(train, to.smo);
  train->callback([&] { run_train(to); });

  PredictOpts po;
  CLI::App* pred = app.add_subcommand("predict", "decision values for a sparse file");
  pred->add_option("--model", po.model, "model file")->required();
  pred->add_option("--data", po.data, "input sparse file")->required();
  pred->add_option("--path", po.path, "dual, precomputed or primal")->capture_default_str();
  pred->callback([&] { run_predict(po); });

  EvalOpts eo;
  CLI::App* ev = app.add_subcommand("eval", "multi-label metrics over per-category models");
  ev->add_option("--models-dir", eo.models_dir, "directory with <category>.model files")
      ->required();
  ev->add_option("--data", eo.data_prefix, "featurize output prefix")->required();
  ev->add_option("--split", eo.split, "train, val or test")->capture_default_str();
  ev->add_option("--mode", eo.mode, "assignment: independent or fallback")
      ->capture_default_str();
  ev->add_option("--path", eo.path, "dual, precomputed or primal")->capture_default_str();
  ev->add_option("--format", eo.format, "tsv or table")->capture_default_str();
  ev->callback([&] { run_eval(eo); });

  BenchOpts bo;
  CLI::App* bench = app.add_subcommand("bench", "prediction timing per kernel and path");
  bench->add_option("--models-dir", bo.models_dir,
                    "directory with <category>.<kernel>.model files")
      ->required();
  bench->add_option("--probes", bo.probes, "sparse file of probe vectors")->required();
  bench->add_option("--reps", bo.reps, "timed repetitions (>= 5)")->capture_default_str();
  bench->add_option("--format", bo.format, "tsv or table")->capture_default_str();
  bench->callback([&] { run_bench(bo); });

  GridOpts go;
  CLI::App* gs = app.add_subcommand("gridsearch", "macro-F1 scan over kernel and C grids");
  gs->add_option("--data", go.data_prefix, "featurize output prefix")->required();
  gs->add_option("--workers", go.workers, "parallel grid points")->capture_default_str();
  gs->add_option("--out", go.out, "write the winning configuration as JSON");
  gs->add_option("--C-grid", go.C_list, "comma-separated C values (default 0.1,1,10,100)");
  gs->add_option("--a-grid", go.a_list, "comma-separated a values (poly, ndk)");
  gs->add_option("--c-grid", go.c_list, "comma-separated c values (poly, ndk)");
  gs->add_option("--gamma-grid", go.gamma_list, "comma-separated gamma values (rbf)");
  add_kernel_flags(gs, go.kernel);
  add_smo_flags(gs, go.smo);
  gs->callback([&] { run_gridsearch(go); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
