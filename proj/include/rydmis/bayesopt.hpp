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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rydmis {

using Theta = std::vector<double>;

struct Dimension {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

struct SearchSpace {
  std::vector<Dimension> dims;

  std::size_t size() const noexcept { return dims.size(); }
  void validate() const;
  Theta to_unit(const Theta& theta) const;
  Theta from_unit(const Theta& u) const;
  bool contains(const Theta& theta, double slack = 1e-12) const;
};

// One sample per equal-width bin in every coordinate, jittered inside the bin.
std::vector<Theta> latin_hypercube(const SearchSpace& space, std::size_t n, std::uint64_t seed);

enum class MaternNu { half, three_halves, five_halves };
std::string_view to_string(MaternNu nu);
MaternNu parse_matern_nu(std::string_view text);

struct KernelConfig {
  MaternNu nu = MaternNu::five_halves;
  bool fit_noise = true;
  double noise_variance = 1e-10;  // standardized units; used when fit_noise is false
  std::size_t random_restarts = 3;
  // Log-space boxes for the hyperparameters (inputs in the unit box, outputs
  // standardized).
  double length_min = 1e-2, length_max = 1e1;
  double signal_min = 1e-3, signal_max = 1e2;
  double noise_min = 1e-8, noise_max = 1e-1;
};

struct GpHyperparameters {
  std::vector<double> length_scales;  // unit-box coordinates
  double signal_variance = 1.0;       // standardized units
  double noise_variance = 1e-6;
};

// Gaussian process with an ARD Matérn kernel over the unit-normalized search
// box and standardized targets.
class GpSurrogate {
 public:
  struct Prediction {
    double mean = 0.0;
    double variance = 0.0;  // latent (noise-free) variance in cost units
  };

  // Maximizes the marginal likelihood from a warm start, the default point
  // and random restarts.
  static GpSurrogate fit(const SearchSpace& space, const std::vector<Theta>& x, const std::vector<double>& y,
                         const KernelConfig& config, std::uint64_t seed,
                         const std::optional<GpHyperparameters>& warm_start = std::nullopt);
  // Conditions on the data with fixed hyperparameters.
  static GpSurrogate with_hyperparameters(const SearchSpace& space, const std::vector<Theta>& x,
                                          const std::vector<double>& y, const KernelConfig& config,
                                          const GpHyperparameters& hyper);

  Prediction predict(const Theta& theta) const;
  const GpHyperparameters& hyperparameters() const noexcept { return hyper_; }
  double signal_variance() const noexcept { return hyper_.signal_variance * y_scale_ * y_scale_; }
  double log_marginal_likelihood() const noexcept { return lml_; }
  double jitter() const noexcept { return jitter_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(xu_.rows()); }

 private:
  GpSurrogate() = default;
  void condition();

  SearchSpace space_;
  KernelConfig config_;
  Eigen::MatrixXd xu_;
  Eigen::VectorXd ys_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  GpHyperparameters hyper_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double lml_ = 0.0;
};

// E[max(best − f, 0)] for f ~ N(mean, variance).
double expected_improvement(double mean, double variance, double best);
double acquisition(const GpSurrogate& gp, const Theta& theta, double best);

struct BoOptions {
  std::size_t n_init = 10;
  std::size_t n_opt = 40;
  KernelConfig kernel;
  std::size_t candidates = 1000;
  std::size_t polish_starts = 3;
  std::size_t polish_evaluations = 200;
  std::size_t refit_every = 5;

  std::size_t budget() const noexcept { return n_init + n_opt; }
};

struct Observation {
  Theta theta;
  double cost = 0.0;
  bool failed = false;
};

// Suggest/observe loop: Latin-hypercube staging, then EI maximization on the
// GP surrogate. Failed evaluations are scored with the worst observed cost.
class BayesOptimizer {
 public:
  BayesOptimizer(SearchSpace space, BoOptions options, std::uint64_t seed);

  Theta suggest();
  void observe(const Theta& theta, double cost);
  void observe_failure(const Theta& theta);

  bool done() const noexcept { return history_.size() >= options_.budget(); }
  const std::vector<Observation>& history() const noexcept { return history_; }
  std::vector<double> best_trace() const;  // running minimum per iteration
  std::optional<Observation> best() const;
  const SearchSpace& space() const noexcept { return space_; }
  const BoOptions& options() const noexcept { return options_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::optional<GpHyperparameters>& hyperparameters() const noexcept { return hyper_; }

  void write_history_csv(std::ostream& out) const;
  std::string snapshot() const;
  static BayesOptimizer restore(std::string_view snapshot_json);

 private:
  std::vector<double> effective_costs() const;

  SearchSpace space_;
  BoOptions options_;
  std::uint64_t seed_;
  std::vector<Theta> initial_;
  std::vector<Observation> history_;
  std::optional<GpHyperparameters> hyper_;
  std::size_t last_refit_ = 0;
};

using Objective = std::function<double(const Theta&)>;

// Runs the whole budget. Objective exceptions are recorded as failures.
BayesOptimizer optimize_loop(const Objective& objective, const SearchSpace& space, const BoOptions& options,
                             std::uint64_t seed);

}  // namespace rydmis
