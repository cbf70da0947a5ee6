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

#include "rydmis/distribution.hpp"
#include "rydmis/graph.hpp"

namespace rydmis {

struct CumulativeMisk {
  std::vector<double> cumulative;  // Σ_{i≤k} P(MIS−i) for k = 0..k_max
  double p_is = 0.0;
  double p_non_is = 0.0;
};

CumulativeMisk cumulative_misk(const Graph& g, const Distribution& dist, std::size_t mis_size, std::size_t k_max);

struct ScalingPoint {
  double n = 0.0;  // vertices
  double p = 0.0;  // cumulative probability in (0, 1]
};

// f_k(N) = 1 for N ≤ b_k, exp(−(N − b_k)/N_k) beyond.
struct DecayFit {
  std::size_t k = 0;
  double n_k = 0.0;
  std::int64_t b_k = 0;
  double residual = 0.0;  // Σ (log p − log f)² over all points

  double operator()(double n) const;
};

// Integer grid over b_k; N_k from through-origin least squares of log p
// against N − b_k on the unsaturated points past the breakpoint.
DecayFit fit_decay(std::span<const ScalingPoint> points, std::size_t k);

// ⌈log(1 − F) / log(1 − p)⌉ with p = f_k(N).
std::uint64_t extrapolate_shots(const DecayFit& fit, double n, double target);

}  // namespace rydmis
