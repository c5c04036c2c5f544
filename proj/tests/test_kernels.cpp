#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "ndksvm/kernel.hpp"
#include "ndksvm/ndk_transform.hpp"

using namespace ndksvm;
using testutil::close;
using testutil::random_sparse;

TEST_CASE("transform components match the closed form") {
  NdkParams p{4.0, 0.0, false};
  ComplexVector block = phi_component(2.0, p);
  // sqrt(a) = 2: (2*(4-1), 2i, 2*sqrt(2)*2, 2i*4)
  CHECK(block[0] == Complex(6.0, 0.0));
  CHECK(block[1] == Complex(0.0, 2.0));
  CHECK(close(block[2].real(), 4.0 * std::sqrt(2.0), 1e-15));
  CHECK(block[2].imag() == 0.0);
  CHECK(block[3] == Complex(0.0, 8.0));
}

TEST_CASE("full transform layout: n blocks plus offset tail") {
  NdkParams p{1.0, 4.0, false};
  SparseVector x(1, {{0, 1.0}});
  ComplexVector v = phi_c(x, p);
  REQUIRE(v.size() == 5);
  CHECK(v[0] == Complex(0.0, 0.0));  // x^2 - 1 = 0
  CHECK(v[1] == Complex(0.0, 1.0));
  CHECK(close(v[2].real(), std::sqrt(2.0), 1e-15));
  CHECK(v[3] == Complex(0.0, 1.0));
  CHECK(v[4] == Complex(2.0, 0.0));  // sqrt(c)

  // Zero coordinates still occupy a block: phi(0) = (-sqrt(a), i*sqrt(a), 0, 0).
  SparseVector z(2, {});
  ComplexVector vz = phi_c(z, NdkParams{9.0, 0.0, false});
  REQUIRE(vz.size() == 9);
  CHECK(vz[0] == Complex(-3.0, 0.0));
  CHECK(vz[1] == Complex(0.0, 3.0));
  CHECK(vz[2] == Complex(0.0, 0.0));
  CHECK(vz[3] == Complex(0.0, 0.0));
  CHECK(vz[8] == Complex(0.0, 0.0));

  CHECK_THROWS_AS(phi_c(x, NdkParams{1.0, -1.0, true}), NumericError);
}

TEST_CASE("transform product reproduces the kernel value") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ad(0.1, 4.0), cd(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 1 + rng() % 12;
    NdkParams p{ad(rng), cd(rng), false};
    SparseVector x1 = random_sparse(rng, dim, 0.6);
    SparseVector x2 = random_sparse(rng, dim, 0.6);

    // Reference: dense transform and naive product loop.
    auto u = testutil::reference_phi(x1.to_dense(), p.a, p.c);
    auto v = testutil::reference_phi(x2.to_dense(), p.a, p.c);
    Complex ref = testutil::reference_mod_product(u, v);
    double want = -p.a * testutil::dense_sq_distance(x1.to_dense(), x2.to_dense()) + p.c;
    CHECK(close(ref.real(), want, 1e-10));
    CHECK(std::abs(ref.imag()) <= 1e-10);

    Complex lib = mod_scalar_product(phi_c(x1, p), phi_c(x2, p));
    CHECK(close(lib.real(), want, 1e-9));
    // Real components meet real components and imaginary meet imaginary,
    // so the imaginary part cancels exactly, not approximately.
    CHECK(lib.imag() == 0.0);

    CHECK(close(sparse_mod_product(x1, x2, p), want, 1e-9));
  }
}

TEST_CASE("sparse product handles one-sided zeros via the index union") {
  NdkParams p{1.0, 0.0, false};
  SparseVector a(3, {{0, 2.0}});
  SparseVector b(3, {{2, 1.0}});
  // Disjoint supports: -(4 + 1) = -5.
  CHECK(sparse_mod_product(a, b, p) == -5.0);
  CHECK(sparse_mod_product(a, SparseVector(3, {}), p) == -4.0);
}

TEST_CASE("kernel_eval closed forms") {
  SparseVector x1(2, {{0, 1.0}, {1, 2.0}});
  SparseVector x2(2, {{0, 3.0}});
  const double d = dot(x1, x2);  // 3
  const double sq = sq_distance(x1, x2);  // 4 + 4 = 8

  CHECK(kernel_eval(KernelSpec::linear(), x1, x2) == 3.0);
  CHECK(kernel_eval(KernelSpec::polynomial(2.0, 1.0, 2), x1, x2) == 49.0);  // (2*3+1)^2
  CHECK(close(kernel_eval(KernelSpec::rbf(0.5), x1, x2), std::exp(-0.5 * sq), 1e-15));
  CHECK(kernel_eval(KernelSpec::ndk(2.0, 3.0), x1, x2) == -2.0 * 8.0 + 3.0);
  CHECK(d == 3.0);

  // Kernel symmetry on random draws.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    SparseVector a = random_sparse(rng, 6, 0.5), b = random_sparse(rng, 6, 0.5);
    for (const KernelSpec& k :
         {KernelSpec::linear(), KernelSpec::polynomial(1.0, 1.0, 3), KernelSpec::rbf(0.25),
          KernelSpec::ndk(0.5, 1.0)})
      CHECK(kernel_eval(k, a, b) == kernel_eval(k, b, a));
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(KernelSpec::rbf(0.0), Error);
  CHECK_THROWS_AS(KernelSpec::rbf(-1.0), Error);
  CHECK_THROWS_AS(KernelSpec::polynomial(0.0, 0.0, 2), Error);
  CHECK_THROWS_AS(KernelSpec::polynomial(1.0, 0.0, 0), Error);
  CHECK_THROWS_AS(KernelSpec::ndk(0.0, 0.0), Error);
  CHECK_THROWS_AS(KernelSpec::ndk(-1.0, 0.0), Error);
  CHECK_THROWS_AS(KernelSpec::ndk(1.0, -1.0), Error);        // needs opt-in
  CHECK_NOTHROW(KernelSpec::ndk(1.0, -1.0, true));
  CHECK(KernelSpec::ndk(1.0, 0.5).description() == "ndk(a=1,c=0.5)");
}

TEST_CASE("negative offset stays usable on the dual path only") {
  NdkParams p{1.0, -2.0, true};
  p.validate();
  SparseVector x1(1, {{0, 1.0}});
  SparseVector x2(1, {});
  CHECK(kernel_eval(KernelSpec::ndk(1.0, -2.0, true), x1, x2) == -3.0);
  CHECK_THROWS_AS(phi_c(x1, p), NumericError);
}

TEST_CASE("zero-sum quadratic form stays non-negative for the shifted distance kernel") {
  std::mt19937_64 rng(21);
  std::vector<SparseVector> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(random_sparse(rng, 5, 0.7));

  CpdReport rep = check_cpd(KernelSpec::ndk(1.5, 2.0), pts, 500, 77);
  CHECK(rep.trials == 500);
  CHECK(rep.min_quadratic_form >= -1e-9);

  // Independent algebra: with coefficients summing to zero the offset
  // cancels and the form collapses to 2a * ||sum_i c_i x_i||^2.
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  const double a = 1.5, c = 2.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> coef(pts.size());
    double mean = 0.0;
    for (double& v : coef) mean += (v = cd(rng));
    mean /= coef.size();
    for (double& v : coef) v -= mean;

    double form = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        form += coef[i] * coef[j] *
                (-a * testutil::dense_sq_distance(pts[i].to_dense(), pts[j].to_dense()) + c);

    std::vector<double> combo(5, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto d = pts[i].to_dense();
      for (std::size_t k = 0; k < 5; ++k) combo[k] += coef[i] * d[k];
    }
    double want = 2.0 * a * testutil::dense_dot(combo, combo);
    CHECK(close(form, want, 1e-9));
    CHECK(form >= -1e-9);
  }

  // The linear kernel is positive semidefinite, so it passes too.
  CHECK(check_cpd(KernelSpec::linear(), pts, 200, 5).min_quadratic_form >= -1e-9);
}

TEST_CASE("kernel block round trip") {
  for (const KernelSpec& spec :
       {KernelSpec::linear(), KernelSpec::polynomial(0.5, 1.25, 3), KernelSpec::rbf(0.125),
        KernelSpec::ndk(2.5, 0.75), KernelSpec::ndk(1.0, -0.5, true)}) {
    std::ostringstream out;
    write_kernel_block(out, spec);
    std::map<std::string, std::string> kv;
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      REQUIRE(eq != std::string::npos);
      kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    CHECK(kernel_from_block(kv) == spec);
  }
}
