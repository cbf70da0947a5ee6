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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "rydmis/graph.hpp"

namespace rydmis {

struct GispTask {
  std::int64_t task_id = 0;
  std::int64_t group_id = 0;
  double start = 0.0;  // minutes
  double end = 0.0;
  bool operator==(const GispTask&) const = default;
};

// Interval tasks with group labels. At most one task per group may be kept,
// and kept tasks must not overlap in time.
struct GispInstance {
  std::vector<GispTask> tasks;
};

// Vertex i is tasks[i]. Touching intervals (end_i == start_j) are compatible.
Graph gisp_to_graph(const GispInstance& inst);

// CSV with header task_id,group_id,start,end.
GispInstance parse_gisp_csv(std::istream& in);
GispInstance parse_gisp_dataset(const std::filesystem::path& path);
void write_gisp_csv(std::ostream& out, const GispInstance& inst);

}  // namespace rydmis
