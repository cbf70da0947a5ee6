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
#include <string_view>
#include <vector>

#include "rydmis/bitstring.hpp"
#include "rydmis/distribution.hpp"
#include "rydmis/graph.hpp"

namespace rydmis {

inline constexpr std::size_t kMaxExtensionDepth = 3;

struct RepairResult {
  Bitstring set;
  std::size_t removed = 0;
};

// Drops the vertex with the most selected neighbours until no edge is
// violated (ties drawn from the seed), then re-adds any dropped vertex that
// no longer conflicts.
RepairResult repair_to_is(const Graph& g, const Bitstring& b, std::uint64_t seed = 0);

// All largest single-round extensions of an independent set by up to k
// vertices; {b} itself when nothing can be added or k = 0.
std::vector<Bitstring> extend_greedy_depth_k(const Graph& g, const Bitstring& b, std::size_t k);

enum class ExtensionChoice {
  sample_one,  // one candidate per round, seeded by the bitstring
  split_mass,  // weight shared evenly across all candidates
};
std::string_view to_string(ExtensionChoice choice);
ExtensionChoice parse_extension_choice(std::string_view text);

struct PostprocessOptions {
  std::size_t depth = 1;
  ExtensionChoice choice = ExtensionChoice::sample_one;
  std::uint64_t seed = 0;
};

struct PostprocessResult {
  Distribution dist;
  double avg_removed = 0.0;  // per unit of mass
  double avg_added = 0.0;
};

// Repair, then extend round by round until no round of up to `depth` vertices
// adds anything; depth 0 only repairs. Applying it twice changes nothing.
PostprocessResult postprocess_distribution(const Graph& g, const Distribution& dist,
                                           const PostprocessOptions& options = {});

}  // namespace rydmis
