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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rydmis/distribution.hpp"
#include "rydmis/graph.hpp"

namespace rydmis {

inline constexpr std::size_t kMaxExactDetectionBits = 20;

// Column-stochastic [[1−ε, ε′], [ε, 1−ε′]]: column = prepared state, row =
// measured state, ε = p(0→1), ε′ = p(1→0).
Eigen::Matrix2d detection_matrix(double eps, double eps_prime);

struct DetectionModel {
  std::vector<double> eps;
  std::vector<double> eps_prime;

  static DetectionModel uniform(std::size_t n, double eps, double eps_prime);
  std::size_t size() const noexcept { return eps.size(); }
  void validate() const;
  bool identity() const;
};

enum class DetectionMode { exact_tensor, stochastic };

// exact_tensor multiplies the dense distribution by ⊗ M_i (N ≤ 20).
// stochastic flips every bit of every shot independently and needs counts.
Distribution apply_detection_errors(const Distribution& dist, const DetectionModel& model, DetectionMode mode,
                                    std::uint64_t seed = 0);

// Probability that bitstring b is read back unchanged.
double readout_fidelity(const Bitstring& b, const DetectionModel& model);
// (1−ε)^{N−S}(1−ε′)^S for a uniform model.
double readout_fidelity(std::size_t n, std::size_t selected, double eps, double eps_prime);

enum class CorrectionPolicy {
  truncate,     // zero the negative entries, then renormalize
  renormalize,  // Euclidean projection onto the probability simplex
};

Distribution correct_distribution(const Distribution& dist, const DetectionModel& model,
                                  CorrectionPolicy policy = CorrectionPolicy::truncate);

struct CurvePoint {
  double d_percent = 0.0;
  double cost = 0.0;
};

// Approximation-ratio cost over the lowest-energy d% of the mass, with a
// fractional share of the marginal bitstring. d = 0 reports the best bitstring.
std::vector<CurvePoint> truncated_ratio_curve(const Graph& g, const Distribution& dist, std::size_t mis_size,
                                              double penalty, std::span<const double> d_grid);

}  // namespace rydmis
