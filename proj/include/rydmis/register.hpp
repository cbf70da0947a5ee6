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

#include <optional>
#include <vector>

#include "rydmis/graph.hpp"

namespace rydmis {

// Atom positions in µm indexed by vertex id.
struct Register {
  std::vector<Point> positions;
  std::optional<LatticeProvenance> layout_origin;

  std::size_t size() const noexcept { return positions.size(); }
};

inline Register register_of(const UdGraph& g) { return {g.positions(), g.provenance()}; }

}  // namespace rydmis
