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

#include "rydmis/graph.hpp"
#include "rydmis/register.hpp"
#include "rydmis/rydberg.hpp"

namespace rydmis {

inline constexpr double kEmbeddingRatioThreshold = 1.1;

struct BlockadeRadius {
  double radius = 0.0;
  bool degenerate = false;  // r_nn == r_nnn
};

// Geometric mean of nearest and next-nearest distances.
BlockadeRadius blockade_radius(double r_nn, double r_nnn);

// Identity embedding of a lattice-sampled graph.
Register embed_on_lattice(const UdGraph& g);

struct ForceDirectedOptions {
  double target_nn = 6.0;  // µm, median edge length after rescaling
  std::size_t iterations = 500;
  std::size_t refine_iterations = 4000;
  double min_spacing = kDefaultMinSpacing;
  double residual_threshold = 0.5;  // final net force relative to the optimal distance
};

struct ForceDirectedResult {
  Register reg;
  double blockade_radius = 0.0;  // suggested radius between longest edge and shortest non-edge
  double residual_force = 0.0;
};

// Fruchterman–Reingold layout followed by a hinge-penalty refinement that
// pulls edges inside, and non-edges outside, a common radius.
ForceDirectedResult embed_force_directed(const Graph& g, std::uint64_t seed, const ForceDirectedOptions& options = {});

struct EmbeddingReport {
  double edge_residual = 0.0;  // Σ_edges U(r_ij) − U(r_b)
  double tail_residual = 0.0;  // Σ_non-edges U(r_ij)
  double ratio_worst = 0.0;    // min non-edge distance / max edge distance
  bool tail_hazard = false;    // some non-edge has U ≥ U(r_b)/8
  bool accepted = false;       // ratio_worst > 1.1 and edges match r_b
  bool edges_match = false;    // rebuilding with r_b reproduces the graph
};

EmbeddingReport validate_embedding(const Graph& g, const Register& reg, double r_b, const RydbergParams& params = {});

}  // namespace rydmis
