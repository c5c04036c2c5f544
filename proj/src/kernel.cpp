#include "ndksvm/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace ndksvm {

KernelSpec KernelSpec::linear() {
  KernelSpec s;
  s.tag_ = KernelTag::Linear;
  return s;
}

KernelSpec KernelSpec::polynomial(double a, double c, int d) {
  if (!(a > 0.0)) throw Error("polynomial kernel: a must be positive");
  if (d < 1) throw Error("polynomial kernel: degree must be >= 1");
  KernelSpec s;
  s.tag_ = KernelTag::Polynomial;
  s.poly_ = {a, c, d};
  return s;
}

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0.0)) throw Error("rbf kernel: gamma must be positive");
  KernelSpec s;
  s.tag_ = KernelTag::Rbf;
  s.rbf_ = {gamma};
  return s;
}

KernelSpec KernelSpec::ndk(double a, double c, bool allow_negative_c) {
  NdkParams p{a, c, allow_negative_c};
  return ndk(p);
}

KernelSpec KernelSpec::ndk(const NdkParams& params) {
  params.validate();
  KernelSpec s;
  s.tag_ = KernelTag::Ndk;
  s.ndk_ = params;
  return s;
}

const PolyParams& KernelSpec::poly() const {
  if (tag_ != KernelTag::Polynomial) throw Error("kernel is not polynomial");
  return poly_;
}

const RbfParams& KernelSpec::rbf_params() const {
  if (tag_ != KernelTag::Rbf) throw Error("kernel is not rbf");
  return rbf_;
}

const NdkParams& KernelSpec::ndk_params() const {
  if (tag_ != KernelTag::Ndk) throw Error("kernel is not ndk");
  return ndk_;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string KernelSpec::description() const {
  switch (tag_) {
    case KernelTag::Linear:
      return "linear";
    case KernelTag::Polynomial:
      return "poly(a=" + num(poly_.a) + ",c=" + num(poly_.c) +
             ",d=" + std::to_string(poly_.d) + ")";
    case KernelTag::Rbf:
      return "rbf(gamma=" + num(rbf_.gamma) + ")";
    case KernelTag::Ndk:
      return "ndk(a=" + num(ndk_.a) + ",c=" + num(ndk_.c) + ")";
  }
  return "?";
}

bool KernelSpec::operator==(const KernelSpec& o) const {
  if (tag_ != o.tag_) return false;
  switch (tag_) {
    case KernelTag::Linear:
      return true;
    case KernelTag::Polynomial:
      return poly_.a == o.poly_.a && poly_.c == o.poly_.c && poly_.d == o.poly_.d;
    case KernelTag::Rbf:
      return rbf_.gamma == o.rbf_.gamma;
    case KernelTag::Ndk:
      return ndk_.a == o.ndk_.a && ndk_.c == o.ndk_.c &&
             ndk_.allow_negative_c == o.ndk_.allow_negative_c;
  }
  return false;
}

namespace {

// Integer power by repeated multiplication so degree 1 reproduces the base
// exactly and results stay deterministic across libm versions.
double ipow(double base, int d) {
  double r = 1.0;
  for (int i = 0; i < d; ++i) r *= base;
  return r;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const SparseVector& x1,
                   const SparseVector& x2) {
  switch (spec.tag()) {
    case KernelTag::Linear:
      return dot(x1, x2);
    case KernelTag::Polynomial: {
      const PolyParams& p = spec.poly();
      return ipow(p.a * dot(x1, x2) + p.c, p.d);
    }
    case KernelTag::Rbf:
      return std::exp(-spec.rbf_params().gamma * sq_distance(x1, x2));
    case KernelTag::Ndk: {
      const NdkParams& p = spec.ndk_params();
      return -p.a * sq_distance(x1, x2) + p.c;
    }
  }
  throw Error("kernel_eval: unknown kernel tag");
}

CpdReport check_cpd(const KernelSpec& spec,
                    const std::vector<SparseVector>& points,
                    std::size_t trials, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n < 2) throw Error("check_cpd: need at least two points");
  if (trials == 0) throw Error("check_cpd: need at least one trial");
  for (std::size_t i = 1; i < n; ++i) {
    if (points[i].dim() != points[0].dim())
      throw DimensionMismatch("check_cpd: dimension mismatch");
  }

  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = kernel_eval(spec, points[i], points[j]);
      gram[i * n + j] = k;
      gram[j * n + i] = k;
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeffs(n);
  double min_q = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    long double mean = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      coeffs[i] = normal(rng);
      mean += coeffs[i];
    }
    mean /= static_cast<long double>(n);
    for (std::size_t i = 0; i < n; ++i)
      coeffs[i] = static_cast<double>(coeffs[i] - mean);

    long double q = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        q += static_cast<long double>(coeffs[i]) * coeffs[j] * gram[i * n + j];
      }
    }
    min_q = std::min(min_q, static_cast<double>(q));
  }
  return CpdReport{min_q, trials};
}

void write_kernel_block(std::ostream& out, const KernelSpec& spec) {
  char buf[64];
  auto emit = [&out, &buf](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << "kernel." << key << "=" << buf << "\n";
  };
  switch (spec.tag()) {
    case KernelTag::Linear:
      out << "kernel.tag=linear\n";
      break;
    case KernelTag::Polynomial:
      out << "kernel.tag=polynomial\n";
      emit("a", spec.poly().a);
      emit("c", spec.poly().c);
      out << "kernel.d=" << spec.poly().d << "\n";
      break;
    case KernelTag::Rbf:
      out << "kernel.tag=rbf\n";
      emit("gamma", spec.rbf_params().gamma);
      break;
    case KernelTag::Ndk:
      out << "kernel.tag=ndk\n";
      emit("a", spec.ndk_params().a);
      emit("c", spec.ndk_params().c);
      out << "kernel.allow_negative_c="
          << (spec.ndk_params().allow_negative_c ? 1 : 0) << "\n";
      break;
  }
}

namespace {

double kv_num(const std::map<std::string, std::string>& kv,
              const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw IoError("kernel block: missing key " + key);
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw IoError("kernel block: bad number for key " + key);
  }
}

}  // namespace

KernelSpec kernel_from_block(const std::map<std::string, std::string>& kv) {
  auto it = kv.find("kernel.tag");
  if (it == kv.end()) throw IoError("kernel block: missing kernel.tag");
  const std::string& tag = it->second;
  if (tag == "linear") return KernelSpec::linear();
  if (tag == "polynomial") {
    return KernelSpec::polynomial(kv_num(kv, "kernel.a"), kv_num(kv, "kernel.c"),
                                  static_cast<int>(kv_num(kv, "kernel.d")));
  }
  if (tag == "rbf") return KernelSpec::rbf(kv_num(kv, "kernel.gamma"));
  if (tag == "ndk") {
    bool allow = false;
    auto f = kv.find("kernel.allow_negative_c");
    if (f != kv.end()) allow = f->second == "1";
    return KernelSpec::ndk(kv_num(kv, "kernel.a"), kv_num(kv, "kernel.c"),
                           allow);
  }
  throw IoError("kernel block: unknown kernel.tag " + tag);
}

}  // namespace ndksvm
