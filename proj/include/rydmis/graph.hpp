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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydmis/bitstring.hpp"

namespace rydmis {

inline constexpr double kDefaultMinSpacing = 5.0;  // µm
inline constexpr std::size_t kDefaultExactCap = 50;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  void add_edge(std::size_t i, std::size_t j);
  bool adjacent(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_.at(i); }
  std::size_t degree(std::size_t i) const { return adj_.at(i).size(); }
  std::size_t max_degree() const;

  // Pairs (i, j) with i < j in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  bool connected() const;
  bool acyclic() const;
  bool bipartite() const;

  Graph relabeled(std::span<const std::size_t> permutation) const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edge_count_ = 0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

enum class LatticeKind { triangular, square, shastry_sutherland };

std::string_view to_string(LatticeKind kind);
LatticeKind parse_lattice_kind(std::string_view name);

// Periodic trap layout. Nearest-neighbour distance equals `spacing`.
struct LatticeLayout {
  LatticeKind kind = LatticeKind::triangular;
  std::vector<Point> sites;
  double spacing = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Rows/cols count sites for triangular and square layouts and 4-site unit
// cells for the Shastry-Sutherland (snub-square) realisation.
LatticeLayout generate_lattice(LatticeKind kind, std::size_t rows, std::size_t cols, double spacing);

// Site pairs at the nearest-neighbour distance.
std::vector<std::vector<std::size_t>> lattice_neighbors(const LatticeLayout& layout);

// Smallest pair distance strictly larger than the nearest-neighbour distance.
double next_nearest_distance(const LatticeLayout& layout);

// √(r_nn · r_nnn) for the layout.
double lattice_blockade_radius(const LatticeLayout& layout);

struct LatticeProvenance {
  LatticeKind kind = LatticeKind::triangular;
  double spacing = 0.0;
  std::vector<std::size_t> site_indices;  // vertex i sits on site_indices[i]
};

// Unit-disk graph: an edge joins i and j iff their distance is at most the
// blockade radius.
class UdGraph {
 public:
  UdGraph() = default;

  std::size_t order() const noexcept { return positions_.size(); }
  const std::vector<Point>& positions() const noexcept { return positions_; }
  double blockade_radius() const noexcept { return blockade_radius_; }
  const Graph& graph() const noexcept { return graph_; }
  const std::optional<LatticeProvenance>& provenance() const noexcept { return provenance_; }
  void set_provenance(LatticeProvenance p) { provenance_ = std::move(p); }

  double min_pair_distance() const;

 private:
  friend UdGraph build_unit_disk_graph(std::span<const Point>, double, double);
  std::vector<Point> positions_;
  double blockade_radius_ = 0.0;
  Graph graph_;
  std::optional<LatticeProvenance> provenance_;
};

UdGraph build_unit_disk_graph(std::span<const Point> positions, double blockade_radius,
                              double min_spacing = kDefaultMinSpacing);

struct FamilyOptions {
  bool allow_cycles = true;
  std::size_t max_attempts = 10000;
  std::optional<double> blockade_radius;  // defaults to lattice_blockade_radius
  double min_spacing = kDefaultMinSpacing;
};

// Connected random site subsets grown by uniform frontier choice. Graph k of
// the output depends only on (seed, k).
std::vector<UdGraph> sample_family(const LatticeLayout& layout, std::span<const std::size_t> sizes,
                                   std::size_t per_size, std::uint64_t seed,
                                   const FamilyOptions& options = {});

bool is_independent_set(const Graph& g, const Bitstring& b);
std::size_t violated_edges(const Graph& g, const Bitstring& b);

struct MisResult {
  std::size_t size = 0;
  std::vector<Bitstring> maximum_sets;  // filled only when enumeration requested
};

// Branch and bound; throws TooLarge above `cap` vertices.
MisResult mis_exact(const Graph& g, bool enumerate = false, std::size_t cap = kDefaultExactCap);

// Minimum-degree greedy; a lower bound usable beyond the exact cap.
Bitstring mis_greedy(const Graph& g);

struct MisLabel {
  enum class Category { non_is, is_k, mis };
  Category category = Category::non_is;
  std::size_t deficit = 0;  // S_G - |selected| for is_k

  bool operator==(const MisLabel&) const = default;
};

MisLabel classify_bitstring(const Graph& g, const Bitstring& b, std::size_t mis_size);

}  // namespace rydmis
