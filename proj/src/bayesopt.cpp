// Copyright 2026 The rydmis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydmis/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "json.hpp"
#include "rydmis/error.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

using nlohmann::json;

void SearchSpace::validate() const {
  if (dims.empty()) raise(ErrorKind::InvalidArgument, "search space has no dimensions");
  for (const auto& d : dims) {
    if (!(d.lower < d.upper)) raise(ErrorKind::InvalidArgument, "dimension '" + d.name + "' has lower >= upper");
  }
}

Theta SearchSpace::to_unit(const Theta& theta) const {
  if (theta.size() != size()) raise(ErrorKind::LengthMismatch, "parameter vector does not match the search space");
  Theta u(size());
  for (std::size_t i = 0; i < size(); ++i) u[i] = (theta[i] - dims[i].lower) / (dims[i].upper - dims[i].lower);
  return u;
}

Theta SearchSpace::from_unit(const Theta& u) const {
  if (u.size() != size()) raise(ErrorKind::LengthMismatch, "parameter vector does not match the search space");
  Theta theta(size());
  for (std::size_t i = 0; i < size(); ++i) theta[i] = dims[i].lower + u[i] * (dims[i].upper - dims[i].lower);
  return theta;
}

bool SearchSpace::contains(const Theta& theta, double slack) const {
  if (theta.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    const double w = dims[i].upper - dims[i].lower;
    if (theta[i] < dims[i].lower - slack * w || theta[i] > dims[i].upper + slack * w) return false;
  }
  return true;
}

std::vector<Theta> latin_hypercube(const SearchSpace& space, std::size_t n, std::uint64_t seed) {
  space.validate();
  if (n == 0) raise(ErrorKind::InvalidArgument, "latin hypercube needs n >= 1");
  Rng rng(seed);
  const auto d = space.size();
  std::vector<Theta> unit(n, Theta(d));
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      unit[i][j] = (static_cast<double>(perm[i]) + uniform01(rng)) / static_cast<double>(n);
    }
  }
  std::vector<Theta> out;
  out.reserve(n);
  for (const auto& u : unit) out.push_back(space.from_unit(u));
  return out;
}

std::string_view to_string(MaternNu nu) {
  switch (nu) {
    case MaternNu::half: return "0.5";
    case MaternNu::three_halves: return "1.5";
    case MaternNu::five_halves: return "2.5";
  }
  return "2.5";
}

MaternNu parse_matern_nu(std::string_view text) {
  if (text == "0.5" || text == "1/2") return MaternNu::half;
  if (text == "1.5" || text == "3/2") return MaternNu::three_halves;
  if (text == "2.5" || text == "5/2") return MaternNu::five_halves;
  raise(ErrorKind::UnknownKind, "Matern smoothness '" + std::string(text) + "'");
}

namespace {

void disable_gsl_abort() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

// Correlation c(r) and g(r) with ∂c/∂log ℓ_d = g(r)·(Δ_d/ℓ_d)².
struct Matern {
  MaternNu nu;
  double corr(double r) const {
    switch (nu) {
      case MaternNu::half: return std::exp(-r);
      case MaternNu::three_halves: {
        const double s = std::numbers::sqrt3 * r;
        return (1 + s) * std::exp(-s);
      }
      case MaternNu::five_halves: {
        const double s = std::sqrt(5.0) * r;
        return (1 + s + s * s / 3.0) * std::exp(-s);
      }
    }
    return 0.0;
  }
  double dlog(double r) const {
    switch (nu) {
      case MaternNu::half: return r > 0.0 ? std::exp(-r) / r : 0.0;
      case MaternNu::three_halves: return 3.0 * std::exp(-std::numbers::sqrt3 * r);
      case MaternNu::five_halves: {
        const double s = std::sqrt(5.0) * r;
        return (5.0 / 3.0) * (1 + s) * std::exp(-s);
      }
    }
    return 0.0;
  }
};

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

constexpr double kJitterSteps[] = {0.0, 1e-10, 1e-8, 1e-6, 1e-4};

// −log marginal likelihood over u, where each log-hyperparameter is
// lo + (hi − lo)·sigmoid(u). Hyperparameter layout: [log ℓ_1..d, log σ², log σ_n²].
class NegLml {
 public:
  NegLml(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelConfig& cfg)
      : y_(y), cfg_(cfg), kernel_{cfg.nu}, n_(x.rows()), d_(x.cols()) {
    sq_.resize(static_cast<std::size_t>(d_));
    for (Eigen::Index k = 0; k < d_; ++k) {
      auto& m = sq_[static_cast<std::size_t>(k)];
      m.resize(n_, n_);
      for (Eigen::Index i = 0; i < n_; ++i) {
        for (Eigen::Index j = 0; j < n_; ++j) m(i, j) = std::pow(x(i, k) - x(j, k), 2);
      }
    }
    for (Eigen::Index k = 0; k < d_; ++k) bounds_.emplace_back(std::log(cfg.length_min), std::log(cfg.length_max));
    bounds_.emplace_back(std::log(cfg.signal_min), std::log(cfg.signal_max));
    if (cfg.fit_noise) bounds_.emplace_back(std::log(cfg.noise_min), std::log(cfg.noise_max));
  }

  std::size_t dim() const { return bounds_.size(); }

  GpHyperparameters decode(const std::vector<double>& u) const {
    GpHyperparameters h;
    for (Eigen::Index k = 0; k < d_; ++k) h.length_scales.push_back(std::exp(log_value(u, static_cast<std::size_t>(k))));
    h.signal_variance = std::exp(log_value(u, static_cast<std::size_t>(d_)));
    h.noise_variance = cfg_.fit_noise ? std::exp(log_value(u, static_cast<std::size_t>(d_) + 1)) : cfg_.noise_variance;
    return h;
  }

  std::vector<double> encode(const GpHyperparameters& h) const {
    std::vector<double> logs;
    for (double l : h.length_scales) logs.push_back(std::log(l));
    logs.push_back(std::log(h.signal_variance));
    if (cfg_.fit_noise) logs.push_back(std::log(h.noise_variance));
    std::vector<double> u(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto [lo, hi] = bounds_[i];
      const double p = std::clamp((logs[i] - lo) / (hi - lo), 1e-6, 1 - 1e-6);
      u[i] = logit(p);
    }
    return u;
  }

  // Returns +inf when the kernel matrix cannot be factorized.
  double operator()(const std::vector<double>& u, std::vector<double>* grad) const {
    const auto h = decode(u);
    Eigen::MatrixXd corr(n_, n_);
    Eigen::MatrixXd dlog(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      for (Eigen::Index j = i; j < n_; ++j) {
        double r2 = 0.0;
        for (Eigen::Index k = 0; k < d_; ++k) {
          r2 += sq_[static_cast<std::size_t>(k)](i, j) / std::pow(h.length_scales[static_cast<std::size_t>(k)], 2);
        }
        const double r = std::sqrt(r2);
        corr(i, j) = corr(j, i) = kernel_.corr(r);
        dlog(i, j) = dlog(j, i) = kernel_.dlog(r);
      }
    }
    Eigen::MatrixXd k = h.signal_variance * corr;
    k.diagonal().array() += h.noise_variance;
    Eigen::LLT<Eigen::MatrixXd> llt;
    bool ok = false;
    const double scale = h.signal_variance;
    for (double jit : kJitterSteps) {
      Eigen::MatrixXd kj = k;
      kj.diagonal().array() += jit * scale;
      llt.compute(kj);
      if (llt.info() == Eigen::Success) {
        ok = true;
        break;
      }
    }
    if (!ok) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd alpha = llt.solve(y_);
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double nll = 0.5 * y_.dot(alpha) + 0.5 * logdet + 0.5 * static_cast<double>(n_) * std::log(2 * std::numbers::pi);
    if (grad) {
      const Eigen::MatrixXd kinv = llt.solve(Eigen::MatrixXd::Identity(n_, n_));
      const Eigen::MatrixXd w = alpha * alpha.transpose() - kinv;
      grad->assign(dim(), 0.0);
      for (Eigen::Index kk = 0; kk < d_; ++kk) {
        const double l2 = std::pow(h.length_scales[static_cast<std::size_t>(kk)], 2);
        const Eigen::MatrixXd dk = h.signal_variance * dlog.cwiseProduct(sq_[static_cast<std::size_t>(kk)]) / l2;
        (*grad)[static_cast<std::size_t>(kk)] = -0.5 * w.cwiseProduct(dk).sum() * chain(u, static_cast<std::size_t>(kk));
      }
      const auto s = static_cast<std::size_t>(d_);
      (*grad)[s] = -0.5 * h.signal_variance * w.cwiseProduct(corr).sum() * chain(u, s);
      if (cfg_.fit_noise) (*grad)[s + 1] = -0.5 * h.noise_variance * w.trace() * chain(u, s + 1);
    }
    return nll;
  }

 private:
  double log_value(const std::vector<double>& u, std::size_t i) const {
    const auto [lo, hi] = bounds_[i];
    return lo + (hi - lo) * sigmoid(u[i]);
  }
  double chain(const std::vector<double>& u, std::size_t i) const {
    const auto [lo, hi] = bounds_[i];
    const double s = sigmoid(u[i]);
    return (hi - lo) * s * (1 - s);
  }

  Eigen::VectorXd y_;
  KernelConfig cfg_;
  Matern kernel_;
  Eigen::Index n_, d_;
  std::vector<Eigen::MatrixXd> sq_;
  std::vector<std::pair<double, double>> bounds_;
};

constexpr double kInfeasible = 1e300;

double gsl_f(const gsl_vector* v, void* params) {
  const auto* obj = static_cast<const NegLml*>(params);
  std::vector<double> u(v->data, v->data + v->size);
  const double f = (*obj)(u, nullptr);
  return std::isfinite(f) ? f : kInfeasible;
}

void gsl_fdf(const gsl_vector* v, void* params, double* f, gsl_vector* df) {
  const auto* obj = static_cast<const NegLml*>(params);
  std::vector<double> u(v->data, v->data + v->size);
  std::vector<double> g;
  const double val = (*obj)(u, &g);
  if (!std::isfinite(val)) {
    *f = kInfeasible;
    gsl_vector_set_zero(df);
    return;
  }
  *f = val;
  for (std::size_t i = 0; i < g.size(); ++i) gsl_vector_set(df, i, g[i]);
}

void gsl_df(const gsl_vector* v, void* params, gsl_vector* df) {
  double f = 0.0;
  gsl_fdf(v, params, &f, df);
}

std::pair<std::vector<double>, double> bfgs(const NegLml& obj, const std::vector<double>& start) {
  const auto n = obj.dim();
  gsl_multimin_function_fdf fn{&gsl_f, &gsl_df, &gsl_fdf, n, const_cast<NegLml*>(&obj)};
  gsl_vector* x0 = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x0, i, start[i]);
  gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  gsl_multimin_fdfminimizer_set(s, &fn, x0, 0.1, 0.1);
  for (int it = 0; it < 200; ++it) {
    if (gsl_multimin_fdfminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(s->gradient, 1e-5) == GSL_SUCCESS) break;
  }
  std::vector<double> u(s->x->data, s->x->data + n);
  const double f = s->f;
  gsl_multimin_fdfminimizer_free(s);
  gsl_vector_free(x0);
  return {u, f};
}

}  // namespace

GpSurrogate GpSurrogate::with_hyperparameters(const SearchSpace& space, const std::vector<Theta>& x,
                                              const std::vector<double>& y, const KernelConfig& config,
                                              const GpHyperparameters& hyper) {
  space.validate();
  if (x.size() != y.size()) raise(ErrorKind::LengthMismatch, "inputs and targets differ in count");
  if (x.size() < 1) raise(ErrorKind::InsufficientData, "GP needs at least one observation");
  GpSurrogate gp;
  gp.space_ = space;
  gp.config_ = config;
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto d = static_cast<Eigen::Index>(space.size());
  gp.xu_.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto u = space.to_unit(x[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < d; ++k) gp.xu_(i, k) = u[static_cast<std::size_t>(k)];
  }
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  gp.y_mean_ = yv.mean();
  const double var = (yv.array() - gp.y_mean_).square().mean();
  gp.y_scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;
  gp.ys_ = (yv.array() - gp.y_mean_) / gp.y_scale_;
  gp.hyper_ = hyper;
  if (!config.fit_noise) gp.hyper_.noise_variance = config.noise_variance;
  gp.condition();
  return gp;
}

GpSurrogate GpSurrogate::fit(const SearchSpace& space, const std::vector<Theta>& x, const std::vector<double>& y,
                             const KernelConfig& config, std::uint64_t seed,
                             const std::optional<GpHyperparameters>& warm_start) {
  if (x.size() < 2) raise(ErrorKind::InsufficientData, "GP fit needs at least two observations");
  disable_gsl_abort();
  GpHyperparameters init;
  init.length_scales.assign(space.size(), std::sqrt(config.length_min * config.length_max));
  init.signal_variance = std::sqrt(config.signal_min * config.signal_max);
  init.noise_variance = config.fit_noise ? std::sqrt(config.noise_min * config.noise_max) : config.noise_variance;
  auto gp = with_hyperparameters(space, x, y, config, init);
  const NegLml obj(gp.xu_, gp.ys_, config);

  std::vector<std::vector<double>> starts;
  if (warm_start && warm_start->length_scales.size() == space.size()) starts.push_back(obj.encode(*warm_start));
  starts.emplace_back(obj.dim(), 0.0);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.5);
  for (std::size_t r = 0; r < config.random_restarts; ++r) {
    std::vector<double> u(obj.dim());
    for (auto& v : u) v = gauss(rng);
    starts.push_back(std::move(u));
  }
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_u;
  for (const auto& s : starts) {
    auto [u, f] = bfgs(obj, s);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }
  if (!(best_f < kInfeasible)) raise(ErrorKind::SingularKernelMatrix, "no factorizable kernel matrix found");
  gp.hyper_ = obj.decode(best_u);
  gp.condition();
  return gp;
}

void GpSurrogate::condition() {
  const Matern kernel{config_.nu};
  const auto n = xu_.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double r2 = 0.0;
      for (Eigen::Index d = 0; d < xu_.cols(); ++d) {
        r2 += std::pow((xu_(i, d) - xu_(j, d)) / hyper_.length_scales[static_cast<std::size_t>(d)], 2);
      }
      k(i, j) = k(j, i) = hyper_.signal_variance * kernel.corr(std::sqrt(r2));
    }
  }
  k.diagonal().array() += hyper_.noise_variance;
  for (double jit : kJitterSteps) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jit * hyper_.signal_variance;
    llt_.compute(kj);
    if (llt_.info() == Eigen::Success) {
      jitter_ = jit * hyper_.signal_variance;
      alpha_ = llt_.solve(ys_);
      const double logdet = 2.0 * llt_.matrixL().toDenseMatrix().diagonal().array().log().sum();
      lml_ = -0.5 * ys_.dot(alpha_) - 0.5 * logdet - 0.5 * static_cast<double>(n) * std::log(2 * std::numbers::pi);
      return;
    }
  }
  raise(ErrorKind::SingularKernelMatrix, "kernel matrix not positive definite after jitter 1e-4");
}

GpSurrogate::Prediction GpSurrogate::predict(const Theta& theta) const {
  const Matern kernel{config_.nu};
  const auto u = space_.to_unit(theta);
  const auto n = xu_.rows();
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (Eigen::Index d = 0; d < xu_.cols(); ++d) {
      r2 += std::pow((xu_(i, d) - u[static_cast<std::size_t>(d)]) / hyper_.length_scales[static_cast<std::size_t>(d)], 2);
    }
    ks[i] = hyper_.signal_variance * kernel.corr(std::sqrt(r2));
  }
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  Prediction p;
  p.mean = y_mean_ + y_scale_ * ks.dot(alpha_);
  p.variance = y_scale_ * y_scale_ * std::max(0.0, hyper_.signal_variance - v.squaredNorm());
  return p;
}

double expected_improvement(double mean, double variance, double best) {
  const double sigma = std::sqrt(std::max(0.0, variance));
  const double gain = best - mean;
  if (sigma < 1e-12) return std::max(gain, 0.0);
  const double z = gain / sigma;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi);
  return std::max(0.0, gain * cdf + sigma * pdf);
}

double acquisition(const GpSurrogate& gp, const Theta& theta, double best) {
  const auto p = gp.predict(theta);
  return expected_improvement(p.mean, p.variance, best);
}

BayesOptimizer::BayesOptimizer(SearchSpace space, BoOptions options, std::uint64_t seed)
    : space_(std::move(space)), options_(std::move(options)), seed_(seed) {
  space_.validate();
  if (options_.budget() == 0) raise(ErrorKind::InvalidArgument, "optimizer budget is zero");
  if (options_.n_init > 0) initial_ = latin_hypercube(space_, options_.n_init, derive_seed(seed_, 0x1a7c));
}

std::vector<double> BayesOptimizer::effective_costs() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& o : history_) {
    if (!o.failed) worst = std::max(worst, o.cost);
  }
  std::vector<double> c;
  c.reserve(history_.size());
  for (const auto& o : history_) c.push_back(o.failed ? worst : o.cost);
  return c;
}

namespace {

struct EiProblem {
  const GpSurrogate* gp;
  const SearchSpace* space;
  double best;
};

double neg_ei_unit(const gsl_vector* v, void* params) {
  const auto* p = static_cast<const EiProblem*>(params);
  Theta u(v->data, v->data + v->size);
  for (auto& x : u) x = std::clamp(x, 0.0, 1.0);
  return -acquisition(*p->gp, p->space->from_unit(u), p->best);
}

}  // namespace

Theta BayesOptimizer::suggest() {
  if (done()) raise(ErrorKind::BudgetExhausted, "optimizer budget of " + std::to_string(options_.budget()) + " used");
  const auto iter = history_.size();
  if (iter < initial_.size()) return initial_[iter];

  const auto costs = effective_costs();
  std::vector<Theta> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < history_.size(); ++i) {
    if (std::isfinite(costs[i])) {
      xs.push_back(history_[i].theta);
      ys.push_back(costs[i]);
    }
  }
  Rng rng(derive_seed(seed_, 0x5000 + iter));
  const auto d = space_.size();
  if (xs.size() < 2) {
    Theta u(d);
    for (auto& x : u) x = uniform01(rng);
    return space_.from_unit(u);
  }
  disable_gsl_abort();
  const bool refit = !hyper_ || xs.size() >= last_refit_ + options_.refit_every;
  GpSurrogate gp = refit ? GpSurrogate::fit(space_, xs, ys, options_.kernel, derive_seed(seed_, 0x9000 + iter), hyper_)
                         : GpSurrogate::with_hyperparameters(space_, xs, ys, options_.kernel, *hyper_);
  if (refit) {
    hyper_ = gp.hyperparameters();
    last_refit_ = xs.size();
  }
  const double best = *std::min_element(ys.begin(), ys.end());

  // Candidate pool: uniform draws, perturbations of the best observations and
  // the observations themselves.
  std::vector<Theta> pool;
  pool.reserve(options_.candidates + 128);
  for (std::size_t c = 0; c < options_.candidates; ++c) {
    Theta u(d);
    for (auto& x : u) x = uniform01(rng);
    pool.push_back(std::move(u));
  }
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ys[a] < ys[b]; });
  std::normal_distribution<double> jitter(0.0, 0.05);
  for (std::size_t r = 0; r < std::min<std::size_t>(5, order.size()); ++r) {
    const auto base = space_.to_unit(xs[order[r]]);
    pool.push_back(base);
    for (int k = 0; k < 20; ++k) {
      Theta u = base;
      for (auto& x : u) x = std::clamp(x + jitter(rng), 0.0, 1.0);
      pool.push_back(std::move(u));
    }
  }
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(pool.size());
  for (std::size_t c = 0; c < pool.size(); ++c) scored.emplace_back(acquisition(gp, space_.from_unit(pool[c]), best), c);
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  Theta best_u = pool[scored.front().second];
  double best_ei = scored.front().first;
  EiProblem prob{&gp, &space_, best};
  gsl_multimin_function fn{&neg_ei_unit, d, &prob};
  gsl_vector* x0 = gsl_vector_alloc(d);
  gsl_vector* step = gsl_vector_alloc(d);
  gsl_vector_set_all(step, 0.05);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
  for (std::size_t k = 0; k < std::min(options_.polish_starts, scored.size()); ++k) {
    const auto& start = pool[scored[k].second];
    for (std::size_t i = 0; i < d; ++i) gsl_vector_set(x0, i, start[i]);
    gsl_multimin_fminimizer_set(s, &fn, x0, step);
    for (std::size_t it = 0; it < options_.polish_evaluations; ++it) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-5) == GSL_SUCCESS) break;
    }
    const double ei = -s->fval;
    if (ei > best_ei) {
      best_ei = ei;
      best_u.assign(s->x->data, s->x->data + d);
      for (auto& x : best_u) x = std::clamp(x, 0.0, 1.0);
    }
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x0);
  return space_.from_unit(best_u);
}

void BayesOptimizer::observe(const Theta& theta, double cost) {
  if (done()) raise(ErrorKind::BudgetExhausted, "observation beyond the optimizer budget");
  if (theta.size() != space_.size()) raise(ErrorKind::LengthMismatch, "observation dimension");
  if (!std::isfinite(cost)) {
    observe_failure(theta);
    return;
  }
  history_.push_back({theta, cost, false});
}

void BayesOptimizer::observe_failure(const Theta& theta) {
  if (done()) raise(ErrorKind::BudgetExhausted, "observation beyond the optimizer budget");
  history_.push_back({theta, std::numeric_limits<double>::quiet_NaN(), true});
}

std::vector<double> BayesOptimizer::best_trace() const {
  std::vector<double> out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : history_) {
    if (!o.failed) best = std::min(best, o.cost);
    out.push_back(best);
  }
  return out;
}

std::optional<Observation> BayesOptimizer::best() const {
  std::optional<Observation> out;
  for (const auto& o : history_) {
    if (!o.failed && (!out || o.cost < out->cost)) out = o;
  }
  return out;
}

void BayesOptimizer::write_history_csv(std::ostream& out) const {
  out << "iter";
  for (const auto& d : space_.dims) out << ',' << d.name;
  out << ",cost,best\n";
  out.precision(17);
  const auto costs = effective_costs();
  const auto trace = best_trace();
  for (std::size_t i = 0; i < history_.size(); ++i) {
    out << i;
    for (double v : history_[i].theta) out << ',' << v;
    out << ',' << costs[i] << ',' << trace[i] << '\n';
  }
}

std::string BayesOptimizer::snapshot() const {
  json j;
  j["seed"] = seed_;
  for (const auto& d : space_.dims) j["space"].push_back({{"name", d.name}, {"lower", d.lower}, {"upper", d.upper}});
  j["options"] = {{"n_init", options_.n_init},
                  {"n_opt", options_.n_opt},
                  {"candidates", options_.candidates},
                  {"polish_starts", options_.polish_starts},
                  {"polish_evaluations", options_.polish_evaluations},
                  {"refit_every", options_.refit_every},
                  {"nu", std::string(to_string(options_.kernel.nu))},
                  {"fit_noise", options_.kernel.fit_noise},
                  {"noise_variance", options_.kernel.noise_variance},
                  {"random_restarts", options_.kernel.random_restarts}};
  j["history"] = json::array();
  for (const auto& o : history_) j["history"].push_back({{"theta", o.theta}, {"cost", o.failed ? 0.0 : o.cost}, {"failed", o.failed}});
  if (hyper_) {
    j["hyper"] = {{"length_scales", hyper_->length_scales},
                  {"signal_variance", hyper_->signal_variance},
                  {"noise_variance", hyper_->noise_variance}};
  }
  j["last_refit"] = last_refit_;
  return j.dump(2);
}

BayesOptimizer BayesOptimizer::restore(std::string_view snapshot_json) {
  json j;
  try {
    j = json::parse(snapshot_json);
    SearchSpace space;
    for (const auto& d : j.at("space")) space.dims.push_back({d.at("name"), d.at("lower"), d.at("upper")});
    BoOptions opt;
    const auto& o = j.at("options");
    opt.n_init = o.at("n_init");
    opt.n_opt = o.at("n_opt");
    opt.candidates = o.at("candidates");
    opt.polish_starts = o.at("polish_starts");
    opt.polish_evaluations = o.at("polish_evaluations");
    opt.refit_every = o.at("refit_every");
    opt.kernel.nu = parse_matern_nu(o.at("nu").get<std::string>());
    opt.kernel.fit_noise = o.at("fit_noise");
    opt.kernel.noise_variance = o.at("noise_variance");
    opt.kernel.random_restarts = o.at("random_restarts");
    BayesOptimizer bo(std::move(space), opt, j.at("seed").get<std::uint64_t>());
    for (const auto& h : j.at("history")) {
      Observation ob{h.at("theta").get<Theta>(), h.at("cost"), h.at("failed")};
      if (ob.failed) ob.cost = std::numeric_limits<double>::quiet_NaN();
      bo.history_.push_back(std::move(ob));
    }
    if (j.contains("hyper")) {
      GpHyperparameters hp;
      hp.length_scales = j["hyper"].at("length_scales").get<std::vector<double>>();
      hp.signal_variance = j["hyper"].at("signal_variance");
      hp.noise_variance = j["hyper"].at("noise_variance");
      bo.hyper_ = hp;
    }
    bo.last_refit_ = j.at("last_refit");
    return bo;
  } catch (const json::exception& e) {
    raise(ErrorKind::ParseError, std::string("optimizer snapshot: ") + e.what());
  }
}

BayesOptimizer optimize_loop(const Objective& objective, const SearchSpace& space, const BoOptions& options,
                             std::uint64_t seed) {
  BayesOptimizer bo(space, options, seed);
  while (!bo.done()) {
    const auto theta = bo.suggest();
    double cost = 0.0;
    try {
      cost = objective(theta);
    } catch (const std::exception&) {
      bo.observe_failure(theta);
      continue;
    }
    bo.observe(theta, cost);
  }
  return bo;
}

}  // namespace rydmis
