#include "ndksvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <memory>
#include <random>
#include <unordered_map>

namespace ndksvm {

void TrainingSet::validate() const {
  if (vectors.empty()) throw Error("training set: empty");
  if (vectors.size() != labels.size())
    throw Error("training set: vector/label count mismatch");
  const std::size_t d = vectors[0].dim();
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != d)
      throw DimensionMismatch("training set: dimension mismatch");
    if (labels[i] == 1)
      pos = true;
    else if (labels[i] == -1)
      neg = true;
    else
      throw Error("training set: labels must be -1 or +1");
  }
  if (!pos || !neg) throw Error("training set: need both classes");
}

void SmoConfig::validate() const {
  if (!(C > 0.0)) throw Error("smo config: C must be positive");
  if (!(tol > 0.0)) throw Error("smo config: tol must be positive");
  if (max_passes <= 0) throw Error("smo config: max_passes must be positive");
  if (max_iters <= 0) throw Error("smo config: max_iters must be positive");
}

namespace {

// Bounded cache of kernel rows keyed by training index. Rows are handed out
// as shared pointers so an evicted row stays valid while a caller holds it.
class KernelRowCache {
 public:
  using Row = std::shared_ptr<const std::vector<double>>;

  KernelRowCache(const TrainingSet& data, const KernelSpec& spec,
                 std::size_t capacity)
      : data_(data), spec_(spec), capacity_(std::max<std::size_t>(capacity, 4)) {}

  Row row(std::size_t i) {
    auto it = map_.find(i);
    if (it != map_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    const std::size_t n = data_.size();
    auto r = std::make_shared<std::vector<double>>(n);
    for (std::size_t k = 0; k < n; ++k)
      (*r)[k] = kernel_eval(spec_, data_.vectors[i], data_.vectors[k]);
    order_.emplace_front(i, std::move(r));
    map_[i] = order_.begin();
    if (order_.size() > capacity_) {
      map_.erase(order_.back().first);
      order_.pop_back();
    }
    return order_.front().second;
  }

 private:
  const TrainingSet& data_;
  const KernelSpec& spec_;
  std::size_t capacity_;
  std::list<std::pair<std::size_t, Row>> order_;
  std::unordered_map<std::size_t,
                     std::list<std::pair<std::size_t, Row>>::iterator>
      map_;
};

constexpr double kStepMin = 1e-12;
constexpr double kRetention = 1e-12;

SvmModel build_model(const TrainingSet& data, const KernelSpec& kernel,
                     const std::vector<double>& alpha, double bias) {
  SvmModel m;
  m.kernel = kernel;
  m.bias = bias;
  m.dim = data.dim();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (alpha[i] > kRetention) {
      m.svs.push_back(data.vectors[i]);
      m.coeffs.push_back(alpha[i] * data.labels[i]);
    }
  }
  return m;
}

double dual_objective(const TrainingSet& data, const KernelSpec& kernel,
                      const std::vector<double>& alpha) {
  long double lin = 0.0L, quad = 0.0L;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    lin += alpha[i];
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (alpha[j] == 0.0) continue;
      quad += static_cast<long double>(alpha[i]) * alpha[j] * data.labels[i] *
              data.labels[j] * kernel_eval(kernel, data.vectors[i], data.vectors[j]);
    }
  }
  return static_cast<double>(lin - 0.5L * quad);
}

struct BiasAndViolation {
  double bias;
  double violation;
};

// Bias from the averaged interior support vectors, falling back to the
// midpoint of the feasible interval when no multiplier is strictly inside
// the box. Violation is measured against that bias.
BiasAndViolation finalize_bias(const TrainingSet& data,
                               const std::vector<double>& alpha,
                               const std::vector<double>& g, double C) {
  const std::size_t n = data.size();
  const double eps_a = 1e-8 * C;
  long double acc = 0.0L;
  std::size_t interior = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > eps_a && alpha[i] < C - eps_a) {
      acc += data.labels[i] - g[i];
      ++interior;
    }
  }
  double b;
  if (interior > 0) {
    b = static_cast<double>(acc / interior);
  } else {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const int y = data.labels[i];
      const bool at_zero = alpha[i] <= eps_a;
      const bool at_c = alpha[i] >= C - eps_a;
      if (at_zero && y == 1) lo = std::max(lo, 1.0 - g[i]);
      if (at_c && y == -1) lo = std::max(lo, -1.0 - g[i]);
      if (at_zero && y == -1) hi = std::min(hi, -1.0 - g[i]);
      if (at_c && y == 1) hi = std::min(hi, 1.0 - g[i]);
    }
    if (std::isfinite(lo) && std::isfinite(hi))
      b = 0.5 * (lo + hi);
    else if (std::isfinite(lo))
      b = lo;
    else if (std::isfinite(hi))
      b = hi;
    else
      b = 0.0;
  }

  double viol = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = data.labels[i] * (g[i] + b);
    double excess;
    if (alpha[i] <= eps_a)
      excess = std::max(0.0, 1.0 - v);
    else if (alpha[i] >= C - eps_a)
      excess = std::max(0.0, v - 1.0);
    else
      excess = std::abs(v - 1.0);
    viol = std::max(viol, excess);
  }
  return {b, viol};
}

}  // namespace

SvmModel smo_train(const TrainingSet& data, const KernelSpec& kernel,
                   const SmoConfig& cfg, std::vector<double>* alpha_out) {
  data.validate();
  cfg.validate();

  const std::size_t n = data.size();
  const double C = cfg.C;
  const std::vector<int>& y = data.labels;

  KernelRowCache cache(data, kernel, cfg.cache_rows);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i)
    diag[i] = kernel_eval(kernel, data.vectors[i], data.vectors[i]);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> E(n);
  for (std::size_t i = 0; i < n; ++i) E[i] = -static_cast<double>(y[i]);
  double b = 0.0;

  std::mt19937_64 rng(cfg.seed);
  long iters = 0;
  double prev_objective = 0.0;

  auto try_step = [&](std::size_t i, std::size_t j) -> bool {
    if (i == j) return false;
    const double ai = alpha[i], aj = alpha[j];
    const int yi = y[i], yj = y[j];
    double L, H;
    if (yi != yj) {
      L = std::max(0.0, aj - ai);
      H = std::min(C, C + aj - ai);
    } else {
      L = std::max(0.0, ai + aj - C);
      H = std::min(C, ai + aj);
    }
    if (H - L < kStepMin) return false;

    const auto row_i = cache.row(i);
    const double Kij = (*row_i)[j];
    const double eta = diag[i] + diag[j] - 2.0 * Kij;
    if (eta <= 0.0) return false;

    double aj_new = aj + yj * (E[i] - E[j]) / eta;
    aj_new = std::clamp(aj_new, L, H);
    if (std::abs(aj_new - aj) < kStepMin) return false;
    double ai_new = ai + static_cast<double>(yi * yj) * (aj - aj_new);
    ai_new = std::clamp(ai_new, 0.0, C);

    const auto row_j = cache.row(j);
    const double dai = ai_new - ai;
    const double daj = aj_new - aj;
    const double b1 = b - E[i] - yi * dai * diag[i] - yj * daj * Kij;
    const double b2 = b - E[j] - yi * dai * Kij - yj * daj * diag[j];
    double b_new;
    if (ai_new > 0.0 && ai_new < C)
      b_new = b1;
    else if (aj_new > 0.0 && aj_new < C)
      b_new = b2;
    else
      b_new = 0.5 * (b1 + b2);
    const double db = b_new - b;

    for (std::size_t k = 0; k < n; ++k)
      E[k] += yi * dai * (*row_i)[k] + yj * daj * (*row_j)[k] + db;
    alpha[i] = ai_new;
    alpha[j] = aj_new;
    b = b_new;

    if (cfg.check_objective) {
      const double obj = dual_objective(data, kernel, alpha);
      if (obj < prev_objective - 1e-7 * std::max(1.0, std::abs(prev_objective)))
        throw NumericError("smo_train: dual objective decreased");
      prev_objective = obj;
    }
    return true;
  };

  const int max_rounds = 50;
  for (int round = 0; round < max_rounds; ++round) {
    int clean = 0;
    while (clean < cfg.max_passes) {
      int changed = 0;
      std::size_t violators = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = E[i] * y[i];
        const bool violates = (r < -cfg.tol && alpha[i] < C) ||
                              (r > cfg.tol && alpha[i] > 0.0);
        if (!violates) continue;
        ++violators;

        bool stepped = false;
        std::size_t j = static_cast<std::size_t>(rng() % n);
        if (j != i) stepped = try_step(i, j);
        if (!stepped) {
          const std::size_t start = static_cast<std::size_t>(rng() % n);
          for (std::size_t off = 0; off < n && !stepped; ++off) {
            const std::size_t jj = (start + off) % n;
            if (jj == i) continue;
            stepped = try_step(i, jj);
          }
        }
        if (stepped) {
          ++changed;
          if (++iters >= cfg.max_iters)
            throw ConvergenceError("smo_train: iteration budget exhausted",
                                   build_model(data, kernel, alpha, b), iters);
        }
      }
      if (violators == 0) break;
      if (changed == 0)
        ++clean;
      else
        clean = 0;
    }

    // Exact gradients, final bias, and a verification pass. Incremental
    // error terms drift by rounding, so the check runs on fresh values.
    std::vector<double> g(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] <= 0.0) continue;
      const auto row_j = cache.row(j);
      const double w = alpha[j] * y[j];
      for (std::size_t k = 0; k < n; ++k) g[k] += w * (*row_j)[k];
    }
    const BiasAndViolation fin = finalize_bias(data, alpha, g, C);
    if (fin.violation <= cfg.tol) {
      if (alpha_out) *alpha_out = alpha;
      return build_model(data, kernel, alpha, fin.bias);
    }
    b = fin.bias;
    for (std::size_t i = 0; i < n; ++i) E[i] = g[i] + b - y[i];
  }
  throw ConvergenceError("smo_train: no convergence after refinement rounds",
                         build_model(data, kernel, alpha, b), iters);
}

Decision decide_dual(const SvmModel& model, const SparseVector& x) {
  if (x.dim() != model.dim)
    throw DimensionMismatch("decide_dual: dimension mismatch");
  long double acc = 0.0L;
  for (std::size_t j = 0; j < model.svs.size(); ++j)
    acc += static_cast<long double>(model.coeffs[j]) *
           kernel_eval(model.kernel, x, model.svs[j]);
  acc += model.bias;
  const double v = static_cast<double>(acc);
  return Decision{v, sign_label(v)};
}

LinearPrimal extract_linear_primal(const SvmModel& model) {
  if (model.kernel.tag() != KernelTag::Linear)
    throw Error("extract_linear_primal: model kernel is not linear");
  LinearPrimal p;
  p.w.assign(model.dim, 0.0);
  p.bias = model.bias;
  for (std::size_t j = 0; j < model.svs.size(); ++j) {
    for (const SparseEntry& e : model.svs[j].entries())
      p.w[e.index] += model.coeffs[j] * e.value;
  }
  return p;
}

double max_kkt_violation(const TrainingSet& data, const KernelSpec& kernel,
                         const std::vector<double>& alpha, double bias,
                         double C) {
  if (alpha.size() != data.size())
    throw Error("max_kkt_violation: multiplier count mismatch");
  const std::size_t n = data.size();
  const double eps_a = 1e-8 * C;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    long double f = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0.0) continue;
      f += static_cast<long double>(alpha[j]) * data.labels[j] *
           kernel_eval(kernel, data.vectors[i], data.vectors[j]);
    }
    f += bias;
    const double v = data.labels[i] * static_cast<double>(f);
    double excess;
    if (alpha[i] <= eps_a)
      excess = std::max(0.0, 1.0 - v);
    else if (alpha[i] >= C - eps_a)
      excess = std::max(0.0, v - 1.0);
    else
      excess = std::abs(v - 1.0);
    worst = std::max(worst, excess);
  }
  return worst;
}

}  // namespace ndksvm
