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

#include "rydmis/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <queue>

#include "rydmis/error.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i >= order() || j >= order()) raise(ErrorKind::OutOfRange, "edge endpoint out of range");
  if (i == j) raise(ErrorKind::InvalidArgument, "self loop");
  if (adjacent(i, j)) return;
  adj_[i].insert(std::lower_bound(adj_[i].begin(), adj_[i].end(), j), j);
  adj_[j].insert(std::lower_bound(adj_[j].begin(), adj_[j].end(), i), i);
  ++edge_count_;
}

bool Graph::adjacent(std::size_t i, std::size_t j) const {
  const auto& a = adj_.at(i);
  return std::binary_search(a.begin(), a.end(), j);
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < order(); ++i) {
    for (auto j : adj_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

bool Graph::connected() const {
  if (order() == 0) return true;
  std::vector<bool> seen(order(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == order();
}

bool Graph::acyclic() const {
  // A forest has n - (number of components) edges.
  std::vector<bool> seen(order(), false);
  std::size_t components = 0;
  for (std::size_t s = 0; s < order(); ++s) {
    if (seen[s]) continue;
    ++components;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return edge_count_ + components == order();
}

bool Graph::bipartite() const {
  std::vector<int> colour(order(), -1);
  for (std::size_t s = 0; s < order(); ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : adj_[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          q.push(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

Graph Graph::relabeled(std::span<const std::size_t> permutation) const {
  if (permutation.size() != order()) raise(ErrorKind::LengthMismatch, "permutation size");
  Graph g(order());
  for (auto [i, j] : edges()) g.add_edge(permutation[i], permutation[j]);
  return g;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::triangular: return "triangular";
    case LatticeKind::square: return "square";
    case LatticeKind::shastry_sutherland: return "shastry_sutherland";
  }
  return "unknown";
}

LatticeKind parse_lattice_kind(std::string_view name) {
  if (name == "triangular") return LatticeKind::triangular;
  if (name == "square") return LatticeKind::square;
  if (name == "shastry_sutherland" || name == "shastry-sutherland") return LatticeKind::shastry_sutherland;
  raise(ErrorKind::UnknownKind, "lattice kind '" + std::string(name) + "'");
}

LatticeLayout generate_lattice(LatticeKind kind, std::size_t rows, std::size_t cols, double spacing) {
  if (rows == 0 || cols == 0) raise(ErrorKind::InvalidArgument, "rows and cols must be >= 1");
  if (!(spacing > 0.0)) raise(ErrorKind::InvalidArgument, "spacing must be positive");
  LatticeLayout layout{kind, {}, spacing, rows, cols};
  const double a = spacing;
  switch (kind) {
    case LatticeKind::square:
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) layout.sites.push_back({c * a, r * a});
      }
      break;
    case LatticeKind::triangular: {
      const double dy = a * std::numbers::sqrt3 / 2.0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double offset = (r % 2 == 1) ? a / 2.0 : 0.0;
        for (std::size_t c = 0; c < cols; ++c) layout.sites.push_back({c * a + offset, r * dy});
      }
      break;
    }
    case LatticeKind::shastry_sutherland: {
      // Snub-square tiling: squares of side a rotated by ±15° on a square
      // superlattice of period a·√(2+√3). Topologically the Shastry-Sutherland
      // lattice (square lattice plus alternating plaquette diagonals), with all
      // bonds of equal length so it is realisable as a unit-disk graph.
      const double period = a * std::sqrt(2.0 + std::numbers::sqrt3);
      const double radius = a / std::numbers::sqrt2;
      constexpr double kDeg = std::numbers::pi / 180.0;
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          for (int k = 0; k < 4; ++k) {
            const double angle = (60.0 + 90.0 * k) * kDeg;
            layout.sites.push_back({c * period + radius * std::cos(angle),
                                    r * period + radius * std::sin(angle)});
          }
        }
      }
      break;
    }
  }
  return layout;
}

std::vector<std::vector<std::size_t>> lattice_neighbors(const LatticeLayout& layout) {
  const auto n = layout.sites.size();
  std::vector<std::vector<std::size_t>> nbrs(n);
  const double tol = 1e-6 * layout.spacing;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(distance(layout.sites[i], layout.sites[j]) - layout.spacing) <= tol) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
      }
    }
  }
  return nbrs;
}

double next_nearest_distance(const LatticeLayout& layout) {
  const double tol = 1e-6 * layout.spacing;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < layout.sites.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.sites.size(); ++j) {
      const double d = distance(layout.sites[i], layout.sites[j]);
      if (d > layout.spacing + tol) best = std::min(best, d);
    }
  }
  return best;
}

double lattice_blockade_radius(const LatticeLayout& layout) {
  const double nnn = next_nearest_distance(layout);
  if (!std::isfinite(nnn)) return layout.spacing * 1.5;
  return std::sqrt(layout.spacing * nnn);
}

double UdGraph::min_pair_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = i + 1; j < positions_.size(); ++j) {
      best = std::min(best, distance(positions_[i], positions_[j]));
    }
  }
  return best;
}

UdGraph build_unit_disk_graph(std::span<const Point> positions, double blockade_radius, double min_spacing) {
  if (!(blockade_radius > 0.0)) raise(ErrorKind::InvalidArgument, "blockade radius must be positive");
  UdGraph g;
  g.positions_.assign(positions.begin(), positions.end());
  g.blockade_radius_ = blockade_radius;
  g.graph_ = Graph(positions.size());
  // Relative slack so lattice distances computed in floating point land on
  // the intended side of the radius.
  const double cutoff = blockade_radius * (1.0 + 1e-12);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = distance(positions[i], positions[j]);
      if (d == 0.0) {
        raise(ErrorKind::DuplicatePosition, "vertices " + std::to_string(i) + " and " + std::to_string(j));
      }
      if (d < min_spacing * (1.0 - 1e-12)) {
        raise(ErrorKind::SpacingViolation, "vertices " + std::to_string(i) + " and " + std::to_string(j) +
                                               " are " + std::to_string(d) + " µm apart (minimum " +
                                               std::to_string(min_spacing) + ")");
      }
      if (d <= cutoff) g.graph_.add_edge(i, j);
    }
  }
  return g;
}

namespace {

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::optional<std::vector<std::size_t>> grow_cluster(const std::vector<std::vector<std::size_t>>& nbrs,
                                                     std::size_t size, Rng& rng) {
  const auto n_sites = nbrs.size();
  std::vector<char> state(n_sites, 0);  // 0 free, 1 frontier, 2 selected
  std::vector<std::size_t> frontier;
  std::vector<std::size_t> chosen;
  auto select = [&](std::size_t s) {
    state[s] = 2;
    chosen.push_back(s);
    for (auto t : nbrs[s]) {
      if (state[t] == 0) {
        state[t] = 1;
        frontier.push_back(t);
      }
    }
  };
  select(uniform_index(rng, n_sites));
  while (chosen.size() < size) {
    if (frontier.empty()) return std::nullopt;
    const auto k = uniform_index(rng, frontier.size());
    const auto s = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    select(s);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::vector<UdGraph> sample_family(const LatticeLayout& layout, std::span<const std::size_t> sizes,
                                   std::size_t per_size, std::uint64_t seed, const FamilyOptions& options) {
  const auto nbrs = lattice_neighbors(layout);
  const double r_b = options.blockade_radius.value_or(lattice_blockade_radius(layout));
  std::vector<UdGraph> family;
  std::uint64_t index = 0;
  for (auto size : sizes) {
    if (size == 0 || size > layout.sites.size()) {
      raise(ErrorKind::InvalidArgument, "graph size " + std::to_string(size) + " exceeds the " +
                                            std::to_string(layout.sites.size()) + " lattice sites");
    }
    for (std::size_t rep = 0; rep < per_size; ++rep, ++index) {
      Rng rng(derive_seed(seed, index));
      bool done = false;
      for (std::size_t attempt = 0; attempt < options.max_attempts && !done; ++attempt) {
        auto sites = grow_cluster(nbrs, size, rng);
        if (!sites) continue;
        std::vector<Point> pts;
        pts.reserve(sites->size());
        for (auto s : *sites) pts.push_back(layout.sites[s]);
        auto g = build_unit_disk_graph(pts, r_b, options.min_spacing);
        if (!options.allow_cycles && !g.graph().acyclic()) continue;
        g.set_provenance({layout.kind, layout.spacing, *sites});
        family.push_back(std::move(g));
        done = true;
      }
      if (!done) {
        raise(ErrorKind::ExhaustedAttempts, "no acceptable subset of size " + std::to_string(size) + " after " +
                                                std::to_string(options.max_attempts) + " attempts");
      }
    }
  }
  return family;
}

bool is_independent_set(const Graph& g, const Bitstring& b) { return violated_edges(g, b) == 0; }

std::size_t violated_edges(const Graph& g, const Bitstring& b) {
  if (b.size() != g.order()) {
    raise(ErrorKind::LengthMismatch, "bitstring of length " + std::to_string(b.size()) + " for graph of order " +
                                         std::to_string(g.order()));
  }
  std::size_t bad = 0;
  for (auto [i, j] : g.edges()) {
    if (b.test(i) && b.test(j)) ++bad;
  }
  return bad;
}

namespace {

class MisSearch {
 public:
  MisSearch(const Graph& g, bool enumerate) : n_(g.order()), enumerate_(enumerate), adj_(g.order(), 0) {
    for (auto [i, j] : g.edges()) {
      adj_[i] |= std::uint64_t{1} << j;
      adj_[j] |= std::uint64_t{1} << i;
    }
  }

  void seed_lower_bound(std::size_t size) { best_ = size; }

  void run(std::uint64_t cand, std::uint64_t chosen, std::size_t size) {
    // Vertices with no remaining neighbours belong to every maximum set.
    for (bool changed = true; changed;) {
      changed = false;
      for (auto rest = cand; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        const auto bit = std::uint64_t{1} << v;
        if ((adj_[v] & cand) == 0) {
          cand &= ~bit;
          chosen |= bit;
          ++size;
          changed = true;
        }
      }
    }
    if (cand == 0) {
      record(chosen, size);
      return;
    }
    const std::size_t upper = size + upper_bound(cand);
    if (enumerate_ ? upper < best_ : upper <= best_) return;

    int pivot = -1;
    int pivot_degree = -1;
    for (auto rest = cand; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj_[v] & cand);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    const auto bit = std::uint64_t{1} << pivot;
    run(cand & ~(adj_[pivot] | bit), chosen | bit, size + 1);
    run(cand & ~bit, chosen, size);
  }

  std::size_t best() const { return best_; }
  std::vector<Bitstring> sets() const {
    std::vector<Bitstring> out;
    out.reserve(sets_.size());
    for (auto m : sets_) out.push_back(Bitstring::from_index(m, n_));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // Every vertex left out of an independent set covers at most Δ edges, so at
  // least ceil(m/Δ) candidates are excluded.
  std::size_t upper_bound(std::uint64_t cand) const {
    const auto n = static_cast<std::size_t>(std::popcount(cand));
    std::size_t twice_m = 0;
    std::size_t max_deg = 0;
    for (auto rest = cand; rest != 0; rest &= rest - 1) {
      const auto d = static_cast<std::size_t>(std::popcount(adj_[std::countr_zero(rest)] & cand));
      twice_m += d;
      max_deg = std::max(max_deg, d);
    }
    if (max_deg == 0) return n;
    const std::size_t m = twice_m / 2;
    return n - (m + max_deg - 1) / max_deg;
  }

  void record(std::uint64_t chosen, std::size_t size) {
    if (size > best_) {
      best_ = size;
      sets_.clear();
    }
    if (enumerate_ && size == best_) sets_.push_back(chosen);
  }

  std::size_t n_;
  bool enumerate_;
  std::vector<std::uint64_t> adj_;
  std::size_t best_ = 0;
  std::vector<std::uint64_t> sets_;
};

}  // namespace

MisResult mis_exact(const Graph& g, bool enumerate, std::size_t cap) {
  const auto n = g.order();
  if (n > cap || n > 64) {
    raise(ErrorKind::TooLarge, "exact MIS limited to " + std::to_string(std::min<std::size_t>(cap, 64)) +
                                   " vertices, got " + std::to_string(n));
  }
  MisResult result;
  if (n == 0) {
    if (enumerate) result.maximum_sets.emplace_back(0);
    return result;
  }
  MisSearch search(g, enumerate);
  const auto greedy = mis_greedy(g).count();
  // Enumeration keeps ties, so the greedy value is only a pruning floor.
  search.seed_lower_bound(greedy);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  search.run(all, 0, 0);
  result.size = std::max(search.best(), greedy);
  if (enumerate) result.maximum_sets = search.sets();
  return result;
}

Bitstring mis_greedy(const Graph& g) {
  const auto n = g.order();
  Bitstring chosen(n);
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  for (;;) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
    }
    if (pick == n) break;
    chosen.set(pick);
    std::vector<std::size_t> gone{pick};
    for (auto w : g.neighbors(pick)) {
      if (!removed[w]) gone.push_back(w);
    }
    for (auto v : gone) {
      removed[v] = true;
      for (auto w : g.neighbors(v)) {
        if (!removed[w] && deg[w] > 0) --deg[w];
      }
    }
  }
  return chosen;
}

MisLabel classify_bitstring(const Graph& g, const Bitstring& b, std::size_t mis_size) {
  if (violated_edges(g, b) > 0) return {MisLabel::Category::non_is, 0};
  const auto s = b.count();
  if (s >= mis_size) return {MisLabel::Category::mis, 0};
  return {MisLabel::Category::is_k, mis_size - s};
}

}  // namespace rydmis
