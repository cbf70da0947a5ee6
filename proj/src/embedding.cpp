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

#include "rydmis/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rydmis/error.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

BlockadeRadius blockade_radius(double r_nn, double r_nnn) {
  if (!(r_nn > 0.0) || r_nnn < r_nn) raise(ErrorKind::InvalidOrdering, "need 0 < r_nn <= r_nnn");
  return {std::sqrt(r_nn * r_nnn), r_nn == r_nnn};
}

Register embed_on_lattice(const UdGraph& g) {
  if (!g.provenance()) raise(ErrorKind::MissingProvenance, "graph does not carry lattice sites");
  return register_of(g);
}

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<Vec2> fruchterman_reingold(const Graph& g, Rng& rng, std::size_t iterations, double& residual) {
  const auto n = g.order();
  const double side = std::sqrt(static_cast<double>(n));
  constexpr double k = 1.0;  // optimal distance for unit area per vertex
  std::uniform_real_distribution<double> coord(-side / 2, side / 2);
  std::vector<Vec2> pos(n);
  for (auto& p : pos) p = {coord(rng), coord(rng)};
  std::vector<Vec2> disp(n);
  auto forces = [&] {
    for (auto& d : disp) d = {};
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = v + 1; u < n; ++u) {
        double dx = pos[v].x - pos[u].x;
        double dy = pos[v].y - pos[u].y;
        double d = std::hypot(dx, dy);
        if (d < 1e-9) {
          dx = 1e-3 * (static_cast<double>(v) - static_cast<double>(u));
          dy = 1e-3;
          d = std::hypot(dx, dy);
        }
        double f = k * k / d;
        if (g.adjacent(v, u)) f -= d * d / k;
        disp[v].x += dx / d * f;
        disp[v].y += dy / d * f;
        disp[u].x -= dx / d * f;
        disp[u].y -= dy / d * f;
      }
    }
  };
  const double t0 = side / 10.0 + 0.1;
  for (std::size_t it = 0; it < iterations; ++it) {
    const double temp = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations));
    forces();
    for (std::size_t v = 0; v < n; ++v) {
      const double len = std::hypot(disp[v].x, disp[v].y);
      if (len > 0.0) {
        const double step = std::min(len, temp);
        pos[v].x += disp[v].x / len * step;
        pos[v].y += disp[v].y / len * step;
      }
    }
  }
  forces();
  residual = 0.0;
  for (const auto& d : disp) residual = std::max(residual, std::hypot(d.x, d.y) / k);
  return pos;
}

// Hinge penalties in units where the median edge is 1: edges at most 1.1,
// non-edges at least 1.35, every pair at least 1.
double refine(const Graph& g, std::vector<Vec2>& pos, std::size_t iterations) {
  const auto n = g.order();
  constexpr double kEdgeMax = 1.1;
  constexpr double kNonEdgeMin = 1.35;
  constexpr double kPairMin = 1.0;
  std::vector<Vec2> grad(n);
  double penalty = 0.0;
  for (std::size_t it = 0; it <= iterations; ++it) {
    for (auto& gv : grad) gv = {};
    penalty = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = v + 1; u < n; ++u) {
        const double dx = pos[v].x - pos[u].x;
        const double dy = pos[v].y - pos[u].y;
        const double d = std::max(std::hypot(dx, dy), 1e-9);
        double dp = 0.0;  // dP/dd
        if (g.adjacent(v, u)) {
          if (d > kEdgeMax) {
            penalty += (d - kEdgeMax) * (d - kEdgeMax);
            dp += 2 * (d - kEdgeMax);
          }
        } else if (d < kNonEdgeMin) {
          penalty += (kNonEdgeMin - d) * (kNonEdgeMin - d);
          dp -= 2 * (kNonEdgeMin - d);
        }
        if (d < kPairMin) {
          penalty += (kPairMin - d) * (kPairMin - d);
          dp -= 2 * (kPairMin - d);
        }
        grad[v].x += dp * dx / d;
        grad[v].y += dp * dy / d;
        grad[u].x -= dp * dx / d;
        grad[u].y -= dp * dy / d;
      }
    }
    if (penalty == 0.0 || it == iterations) break;
    constexpr double kStep = 0.05;
    for (std::size_t v = 0; v < n; ++v) {
      pos[v].x -= kStep * grad[v].x;
      pos[v].y -= kStep * grad[v].y;
    }
  }
  return penalty;
}

void scale_to_median_edge(const Graph& g, std::vector<Vec2>& pos, double target) {
  std::vector<double> lengths;
  for (auto [i, j] : g.edges()) lengths.push_back(std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y));
  if (lengths.empty()) return;
  const double med = median(lengths);
  if (!(med > 0.0)) return;
  for (auto& p : pos) {
    p.x *= target / med;
    p.y *= target / med;
  }
}

}  // namespace

ForceDirectedResult embed_force_directed(const Graph& g, std::uint64_t seed, const ForceDirectedOptions& options) {
  const auto n = g.order();
  ForceDirectedResult out;
  if (n == 0) return out;
  if (n == 1) {
    out.reg.positions = {{0.0, 0.0}};
    out.blockade_radius = options.target_nn;
    return out;
  }
  // A few restarts; keep the layout with the smallest remaining penalty.
  constexpr std::size_t kRestarts = 6;
  std::vector<Vec2> best;
  double best_penalty = std::numeric_limits<double>::infinity();
  double best_residual = 0.0;
  for (std::size_t r = 0; r < kRestarts && best_penalty > 0.0; ++r) {
    Rng rng(derive_seed(seed, r));
    double residual = 0.0;
    auto pos = fruchterman_reingold(g, rng, options.iterations, residual);
    if (g.edge_count() > 0) {
      scale_to_median_edge(g, pos, 1.0);
    } else {
      double dmin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) dmin = std::min(dmin, std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y));
      }
      for (auto& p : pos) {
        p.x *= 1.35 / dmin;
        p.y *= 1.35 / dmin;
      }
    }
    const double penalty = refine(g, pos, options.refine_iterations);
    if (penalty < best_penalty) {
      best_penalty = penalty;
      best = std::move(pos);
      best_residual = residual;
    }
  }
  for (const auto& p : best) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) raise(ErrorKind::NonConvergence, "layout diverged");
  }
  if (best_residual > options.residual_threshold * static_cast<double>(n)) {
    raise(ErrorKind::NonConvergence, "residual force " + std::to_string(best_residual) + " after " +
                                         std::to_string(options.iterations) + " iterations");
  }
  if (g.edge_count() > 0) {
    scale_to_median_edge(g, best, options.target_nn);
  } else {
    for (auto& p : best) {
      p.x *= options.target_nn;
      p.y *= options.target_nn;
    }
  }
  double cx = 0.0, cy = 0.0;
  for (const auto& p : best) {
    cx += p.x / static_cast<double>(n);
    cy += p.y / static_cast<double>(n);
  }
  double edge_max = 0.0;
  double nonedge_min = std::numeric_limits<double>::infinity();
  double pair_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(best[i].x - best[j].x, best[i].y - best[j].y);
      pair_min = std::min(pair_min, d);
      if (g.adjacent(i, j)) {
        edge_max = std::max(edge_max, d);
      } else {
        nonedge_min = std::min(nonedge_min, d);
      }
    }
  }
  double scale = 1.0;
  if (pair_min < options.min_spacing) scale = options.min_spacing / pair_min;
  out.reg.positions.reserve(n);
  for (const auto& p : best) out.reg.positions.push_back({(p.x - cx) * scale, (p.y - cy) * scale});
  if (g.edge_count() == 0) {
    out.blockade_radius = 0.5 * pair_min * scale;
  } else if (std::isfinite(nonedge_min)) {
    out.blockade_radius = std::sqrt(edge_max * nonedge_min) * scale;
  } else {
    out.blockade_radius = edge_max * 1.1 * scale;
  }
  out.residual_force = best_residual;
  return out;
}

EmbeddingReport validate_embedding(const Graph& g, const Register& reg, double r_b, const RydbergParams& params) {
  if (g.order() != reg.size()) raise(ErrorKind::LengthMismatch, "graph and register sizes differ");
  EmbeddingReport rep;
  const double u_b = interaction_strength(r_b, params);
  double edge_max = 0.0;
  double nonedge_min = std::numeric_limits<double>::infinity();
  bool match = true;
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = i + 1; j < g.order(); ++j) {
      const double d = distance(reg.positions[i], reg.positions[j]);
      const double u = interaction_strength(d, params);
      const bool within = d <= r_b * (1.0 + 1e-12);
      if (g.adjacent(i, j)) {
        rep.edge_residual += u - u_b;
        edge_max = std::max(edge_max, d);
        match = match && within;
      } else {
        rep.tail_residual += u;
        nonedge_min = std::min(nonedge_min, d);
        match = match && !within;
        if (u >= u_b / 8.0) rep.tail_hazard = true;
      }
    }
  }
  rep.ratio_worst = edge_max > 0.0 ? nonedge_min / edge_max : std::numeric_limits<double>::infinity();
  rep.edges_match = match;
  rep.accepted = match && rep.ratio_worst > kEmbeddingRatioThreshold;
  return rep;
}

}  // namespace rydmis
