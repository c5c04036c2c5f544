#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "ndksvm/model_io.hpp"
#include "ndksvm/sparse_io.hpp"

using namespace ndksvm;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& rel, const std::string& content) const {
    fs::path p = path / rel;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string at(const std::string& rel) const { return (path / rel).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sparse files reproduce doubles exactly") {
  TempDir tmp("ndksvm_sparse_io");
  std::vector<double> labels = {1.0, -1.0, 1.0};
  std::vector<SparseVector> vecs = {
      SparseVector(6, {{0, 0.1}, {5, 1.0 / 3.0}}),
      SparseVector(6, {{2, -2.5e17}, {3, 1e-300}}),
      SparseVector(6, {{1, std::acos(-1.0)}}),
  };
  std::string path = tmp.at("round.svm");
  write_sparse_file(path, labels, vecs);

  SparseFile f = read_sparse_file(path);
  CHECK(f.labels == labels);
  CHECK(f.dim == 6);
  REQUIRE(f.vectors.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(f.vectors[i] == vecs[i]);

  SUBCASE("a larger explicit dim widens the vectors") {
    SparseFile wide = read_sparse_file(path, 10);
    CHECK(wide.dim == 10);
    CHECK(wide.vectors[0].dim() == 10);
  }
  SUBCASE("indices beyond an explicit dim are rejected") {
    CHECK_THROWS_AS(read_sparse_file(path, 3), IoError);
  }
}

TEST_CASE("sparse file parsing accepts signed labels and reports locations") {
  TempDir tmp("ndksvm_sparse_parse");

  std::string plus = tmp.file("plus.svm", "+1 1:0.5 3:2\n-1 2:1\n\n+1 1:1\n");
  SparseFile f = read_sparse_file(plus);
  CHECK(f.labels == std::vector<double>{1.0, -1.0, 1.0});
  CHECK(f.vectors.size() == 3);  // the blank line is skipped
  CHECK(f.dim == 3);
  CHECK(f.vectors[0].entries()[1].value == 2.0);

  std::string bad = tmp.file("bad.svm", "1 1:0.5\n1 nonsense\n");
  std::string msg = message_of([&] { read_sparse_file(bad); });
  CHECK(msg.find("bad.svm:2") != std::string::npos);

  std::string zero = tmp.file("zero.svm", "1 0:0.5\n");
  CHECK_THROWS_AS(read_sparse_file(zero), IoError);  // indices are 1-based

  std::string dup = tmp.file("dup.svm", "1 2:0.5 2:1\n");
  CHECK_THROWS_AS(read_sparse_file(dup), IoError);

  CHECK_THROWS_AS(read_sparse_file(tmp.at("missing.svm")), IoError);
}

TEST_CASE("format_double survives a parse round trip") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 25) - 12);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("model files round trip every field bitwise") {
  TempDir tmp("ndksvm_model_io");

  SvmModel m;
  m.kernel = KernelSpec::ndk(0.75, 2.0);
  m.svs = {SparseVector(4, {{0, 1.5}, {2, -0.25}}), SparseVector(4, {{3, 1.0 / 7.0}}),
           SparseVector(4, {})};
  m.coeffs = {0.625, -1.0 / 3.0, 0.125};
  m.bias = -0.875;
  m.dim = 4;

  SUBCASE("bare model: optional sections stay absent") {
    std::string path = tmp.at("bare.model");
    save_model(path, m);
    LoadedModel l = load_model(path);
    CHECK(l.model.kernel == m.kernel);
    CHECK(l.model.bias == m.bias);
    CHECK(l.model.dim == m.dim);
    CHECK(l.model.coeffs == m.coeffs);
    REQUIRE(l.model.svs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(l.model.svs[i] == m.svs[i]);
    CHECK_FALSE(l.fast.has_value());
    CHECK_FALSE(l.primal.has_value());
  }

  SUBCASE("folded sections round trip and the zero fold is rebuilt") {
    NdkFastModel fast = precompute_dual(m);
    ComplexPrimalModel primal = build_complex_primal(m);
    std::string path = tmp.at("full.model");
    save_model(path, m, &fast, &primal);

    LoadedModel l = load_model(path);
    REQUIRE(l.fast.has_value());
    REQUIRE(l.primal.has_value());
    CHECK(l.fast->S == fast.S);
    CHECK(l.fast->u == fast.u);
    CHECK(l.fast->c_prime == fast.c_prime);
    CHECK(l.fast->bias == fast.bias);
    CHECK(l.fast->z == fast.z);
    CHECK(l.fast->dim == fast.dim);
    CHECK(l.fast->source == fast.source);
    CHECK(l.fast->params.a == fast.params.a);
    CHECK(l.fast->params.c == fast.params.c);
    CHECK(l.primal->w == primal.w);
    CHECK(l.primal->bias == primal.bias);
    CHECK(l.primal->zero_fold == primal.zero_fold);  // recomputed on load
    CHECK(l.primal->source == model_fingerprint(m));

    // Same decisions after the round trip.
    SparseVector probe(4, {{1, 2.0}, {3, -1.0}});
    CHECK(decide_precomputed(*l.fast, probe).value ==
          decide_precomputed(fast, probe).value);
    CHECK(decide_complex_primal(*l.primal, probe).value ==
          decide_complex_primal(primal, probe).value);
  }

  SUBCASE("negative-c models keep the opt-in flag") {
    SvmModel neg = m;
    neg.kernel = KernelSpec::ndk(1.0, -2.0, /*allow_negative_c=*/true);
    NdkFastModel fast = precompute_dual(neg);
    std::string path = tmp.at("neg.model");
    save_model(path, neg, &fast);
    LoadedModel l = load_model(path);
    CHECK(l.model.kernel == neg.kernel);
    CHECK(l.model.kernel.ndk_params().allow_negative_c);
    CHECK(l.fast.has_value());
    CHECK_FALSE(l.primal.has_value());
  }
}

TEST_CASE("loaders skip sections they do not recognize") {
  TempDir tmp("ndksvm_model_fwd");
  SvmModel m;
  m.kernel = KernelSpec::rbf(0.5);
  m.svs = {SparseVector(2, {{0, 1.0}})};
  m.coeffs = {1.0};
  m.bias = 0.25;
  m.dim = 2;
  std::string path = tmp.at("fwd.model");
  save_model(path, m);

  std::ofstream app(path, std::ios::app);
  app << "[section shiny_new_block]\n" << "mystery=42\n" << "rows=1 2 3\n" << "[end]\n";
  app.close();

  LoadedModel l = load_model(path);
  CHECK(l.model.bias == 0.25);
  CHECK(l.model.svs.size() == 1);

  // A block outside the [section ...] grammar is a format error, and an
  // unterminated section is too.
  std::ofstream junk(path, std::ios::app);
  junk << "[nonsense]\n";
  junk.close();
  CHECK_THROWS_AS(load_model(path), IoError);
}

TEST_CASE("malformed model files fail with located errors") {
  TempDir tmp("ndksvm_model_bad");

  CHECK_THROWS_AS(load_model(tmp.at("nope.model")), IoError);

  std::string garbage = tmp.file("garbage.model", "this is not a model\n");
  CHECK_THROWS_AS(load_model(garbage), IoError);

  // Truncation: drop the sv lines a valid file promises.
  SvmModel m;
  m.kernel = KernelSpec::linear();
  m.svs = {SparseVector(2, {{0, 1.0}}), SparseVector(2, {{1, 1.0}})};
  m.coeffs = {0.5, -0.5};
  m.bias = 0.0;
  m.dim = 2;
  std::string good = tmp.at("good.model");
  save_model(good, m);
  std::string text = slurp(good);
  std::size_t cut = text.rfind("sv ");
  REQUIRE(cut != std::string::npos);
  std::string truncated = tmp.file("short.model", text.substr(0, cut));
  CHECK_THROWS_AS(load_model(truncated), IoError);
}
