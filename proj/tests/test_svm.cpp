#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ndksvm/svm.hpp"

using namespace ndksvm;
using testutil::close;

namespace {

TrainingSet xor_square() {
  // Truth table corners; the mixed corners are the positive class.
  return TrainingSet{
      {SparseVector(2, {}), SparseVector(2, {{0, 1.0}, {1, 1.0}}),
       SparseVector(2, {{0, 1.0}}), SparseVector(2, {{1, 1.0}})},
      {-1, -1, 1, 1}};
}

double train_accuracy(const SvmModel& model, const TrainingSet& data) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double v = decide_dual(model, data.vectors[i]).value;
    int pred = v >= 0.0 ? 1 : -1;
    if (pred == data.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

TrainingSet random_problem(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  TrainingSet ts;
  std::vector<double> w(dim);
  for (double& x : w) x = val(rng);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector v = testutil::random_sparse(rng, dim, 0.8, 1.0);
    double score = testutil::dense_dot(w, v.to_dense()) + 0.1 * val(rng);
    ts.vectors.push_back(v);
    ts.labels.push_back(score >= 0.0 ? 1 : -1);
  }
  // Both classes must appear; flip the last point if the draw collapsed.
  bool has_pos = false, has_neg = false;
  for (int y : ts.labels) (y == 1 ? has_pos : has_neg) = true;
  if (!has_pos) ts.labels.back() = 1;
  if (!has_neg) ts.labels.back() = -1;
  return ts;
}

}  // namespace

TEST_CASE("training-set and config validation") {
  CHECK_THROWS_AS(TrainingSet{}.validate(), Error);
  TrainingSet one_class{{SparseVector(1, {{0, 1.0}}), SparseVector(1, {})}, {1, 1}};
  CHECK_THROWS_AS(one_class.validate(), Error);
  TrainingSet bad_label{{SparseVector(1, {{0, 1.0}}), SparseVector(1, {})}, {1, 0}};
  CHECK_THROWS_AS(bad_label.validate(), Error);

  SmoConfig cfg;
  cfg.C = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SmoConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("analytic two-point problem: multipliers, weight and bias") {
  // x = -1 labeled -1, x = +1 labeled +1 with a linear kernel: the dual
  // objective reduces to 2a - 2a^2 per multiplier symmetry, so a = 1/2,
  // w = 1, b = 0.
  TrainingSet ts{{SparseVector(1, {{0, -1.0}}), SparseVector(1, {{0, 1.0}})}, {-1, 1}};
  SmoConfig cfg;
  cfg.C = 10.0;
  cfg.tol = 1e-6;
  std::vector<double> alpha;
  SvmModel m = smo_train(ts, KernelSpec::linear(), cfg, &alpha);

  REQUIRE(alpha.size() == 2);
  CHECK(close(alpha[0], 0.5, 1e-6));
  CHECK(close(alpha[1], 0.5, 1e-6));
  CHECK(std::abs(m.bias) <= 1e-6);

  LinearPrimal lp = extract_linear_primal(m);
  REQUIRE(lp.w.size() == 1);
  CHECK(close(lp.w[0], 1.0, 1e-6));

  CHECK(close(decide_dual(m, SparseVector(1, {{0, 2.0}})).value, 2.0, 1e-6));
  CHECK(close(decide_dual(m, SparseVector(1, {{0, -3.0}})).value, -3.0, 1e-6));
}

TEST_CASE("dual decision is the plain kernel expansion") {
  SvmModel m;
  m.kernel = KernelSpec::linear();
  m.svs = {SparseVector(1, {{0, -1.0}}), SparseVector(1, {{0, 1.0}})};
  m.coeffs = {-0.5, 0.5};
  m.bias = 0.0;
  m.dim = 1;
  Decision d = decide_dual(m, SparseVector(1, {{0, 2.0}}));
  CHECK(d.value == 2.0);
  CHECK(d.label == 1);
  CHECK(decide_dual(m, SparseVector(1, {})).value == 0.0);
}

TEST_CASE("degree-2 polynomial solves the xor square, linear cannot") {
  TrainingSet ts = xor_square();
  SmoConfig cfg;
  cfg.C = 10.0;
  cfg.seed = 5;

  SvmModel poly = smo_train(ts, KernelSpec::polynomial(1.0, 1.0, 2), cfg);
  CHECK(train_accuracy(poly, ts) == 1.0);

  SvmModel lin = smo_train(ts, KernelSpec::linear(), cfg);
  CHECK(train_accuracy(lin, ts) <= 0.75);
}

TEST_CASE("shifted-distance kernel cannot solve the xor square") {
  // For this kernel every decision function satisfies
  //   f(0,0) + f(1,1) = f(1,0) + f(0,1)
  // because the four corners are concyclic: the decision surface is a
  // sphere (or a hyperplane when the multipliers sum to zero), and the
  // squared-distance sums from opposite corner pairs coincide. One corner
  // is therefore always on the wrong side.
  TrainingSet ts = xor_square();
  double best = 0.0;
  for (double a : {0.25, 1.0, 4.0})
    for (double c : {0.0, 1.0, 10.0})
      for (double C : {1.0, 10.0, 100.0}) {
        SmoConfig cfg;
        cfg.C = C;
        SvmModel m = smo_train(ts, KernelSpec::ndk(a, c), cfg);

        double f00 = decide_dual(m, ts.vectors[0]).value;
        double f11 = decide_dual(m, ts.vectors[1]).value;
        double f10 = decide_dual(m, ts.vectors[2]).value;
        double f01 = decide_dual(m, ts.vectors[3]).value;
        double scale = std::max({1.0, std::abs(f00), std::abs(f11), std::abs(f10),
                                 std::abs(f01)});
        CHECK(std::abs((f00 + f11) - (f10 + f01)) <= 1e-7 * scale);

        best = std::max(best, train_accuracy(m, ts));
      }
  CHECK(best <= 0.75);
}

TEST_CASE("optimality conditions hold after training on random problems") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    TrainingSet ts = random_problem(rng, 30, 4);
    for (const KernelSpec& k :
         {KernelSpec::linear(), KernelSpec::rbf(0.5), KernelSpec::ndk(1.0, 1.0)}) {
      SmoConfig cfg;
      cfg.C = 5.0;
      cfg.seed = 100 + trial;
      std::vector<double> alpha;
      SvmModel m = smo_train(ts, k, cfg, &alpha);
      CHECK(max_kkt_violation(ts, k, alpha, m.bias, cfg.C) <= cfg.tol);
      // The model keeps only multipliers above noise level; the stored
      // expansion must still reproduce the full one.
      std::size_t sv = 0;
      for (std::size_t i = 0; i < ts.size(); ++i)
        if (alpha[i] > 0.0) ++sv;
      CHECK(m.n_svs() <= sv);
      for (double coeff : m.coeffs) CHECK(coeff != 0.0);
      for (int p = 0; p < 5; ++p) {
        SparseVector x = testutil::random_sparse(rng, 4, 0.8);
        double full = m.bias;
        for (std::size_t i = 0; i < ts.size(); ++i)
          full += alpha[i] * ts.labels[i] * kernel_eval(k, x, ts.vectors[i]);
        CHECK(std::abs(full - decide_dual(m, x).value) <= 1e-9);
      }
    }
  }
}

TEST_CASE("training is deterministic and cache-size independent") {
  std::mt19937_64 rng(77);
  TrainingSet ts = random_problem(rng, 40, 5);
  SmoConfig cfg;
  cfg.C = 2.0;
  cfg.seed = 9;

  SvmModel a = smo_train(ts, KernelSpec::ndk(1.0, 0.5), cfg);
  SvmModel b = smo_train(ts, KernelSpec::ndk(1.0, 0.5), cfg);
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.bias == b.bias);

  SmoConfig tiny_cache = cfg;
  tiny_cache.cache_rows = 4;
  SvmModel c = smo_train(ts, KernelSpec::ndk(1.0, 0.5), tiny_cache);
  CHECK(a.coeffs == c.coeffs);
  CHECK(a.bias == c.bias);

  SmoConfig other_seed = cfg;
  other_seed.seed = 10;
  std::vector<double> alpha_other;
  smo_train(ts, KernelSpec::ndk(1.0, 0.5), other_seed, &alpha_other);
  CHECK(max_kkt_violation(ts, KernelSpec::ndk(1.0, 0.5), alpha_other, 0.0, cfg.C) >= 0.0);
}

TEST_CASE("objective monotonicity check stays silent on an honest run") {
  std::mt19937_64 rng(15);
  TrainingSet ts = random_problem(rng, 25, 3);
  SmoConfig cfg;
  cfg.C = 1.0;
  cfg.check_objective = true;
  CHECK_NOTHROW(smo_train(ts, KernelSpec::rbf(1.0), cfg));
}

TEST_CASE("iteration budget exhaustion carries the best model so far") {
  std::mt19937_64 rng(8);
  TrainingSet ts = random_problem(rng, 40, 4);
  SmoConfig cfg;
  cfg.C = 10.0;
  cfg.max_iters = 3;
  try {
    smo_train(ts, KernelSpec::rbf(0.5), cfg);
    FAIL("expected the step budget to run out");
  } catch (const ConvergenceError& e) {
    CHECK(e.iters == 3);
    CHECK(e.best.dim == 4);
    CHECK(e.best.kernel.tag() == KernelTag::Rbf);
  }
}

TEST_CASE("non-linear models refuse the explicit-weight collapse") {
  TrainingSet ts = xor_square();
  SmoConfig cfg;
  SvmModel m = smo_train(ts, KernelSpec::ndk(1.0, 0.0), cfg);
  CHECK_THROWS_AS(extract_linear_primal(m), Error);
}
