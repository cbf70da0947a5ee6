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

#include "rydmis/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rydmis/error.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

namespace {

std::size_t selected_neighbours(const Graph& g, const Bitstring& b, std::size_t v) {
  std::size_t c = 0;
  for (auto u : g.neighbors(v))
    if (b.test(u)) ++c;
  return c;
}

// Unselected vertices with no selected neighbour.
std::vector<std::size_t> free_vertices(const Graph& g, const Bitstring& b) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (!b.test(v) && selected_neighbours(g, b, v) == 0) out.push_back(v);
  return out;
}

void independent_subsets(const Graph& g, const std::vector<std::size_t>& pool, std::size_t size, std::size_t from,
                         std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& out) {
  if (chosen.size() == size) {
    out.push_back(chosen);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    const std::size_t v = pool[i];
    if (std::any_of(chosen.begin(), chosen.end(), [&](std::size_t u) { return g.adjacent(u, v); })) continue;
    chosen.push_back(v);
    independent_subsets(g, pool, size, i + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

RepairResult repair_to_is(const Graph& g, const Bitstring& b, std::uint64_t seed) {
  if (b.size() != g.order()) raise(ErrorKind::LengthMismatch, "bitstring and graph sizes differ");
  Rng rng(derive_seed(seed, b.hash()));
  Bitstring s = b;
  std::vector<std::size_t> dropped;
  for (;;) {
    std::size_t worst = 0;
    std::vector<std::size_t> ties;
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (!s.test(v)) continue;
      const std::size_t d = selected_neighbours(g, s, v);
      if (d == 0 || d < worst) continue;
      if (d > worst) {
        worst = d;
        ties.clear();
      }
      ties.push_back(v);
    }
    if (ties.empty()) break;
    const std::size_t v = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];
    s.reset(v);
    dropped.push_back(v);
  }
  std::shuffle(dropped.begin(), dropped.end(), rng);
  for (auto v : dropped)
    if (selected_neighbours(g, s, v) == 0) s.set(v);
  return {s, b.count() - s.count()};
}

std::vector<Bitstring> extend_greedy_depth_k(const Graph& g, const Bitstring& b, std::size_t k) {
  if (k > kMaxExtensionDepth)
    raise(ErrorKind::DepthTooLarge, "extension depth " + std::to_string(k) + " exceeds " +
                                        std::to_string(kMaxExtensionDepth));
  if (b.size() != g.order()) raise(ErrorKind::LengthMismatch, "bitstring and graph sizes differ");
  if (!is_independent_set(g, b)) raise(ErrorKind::NotAnIndependentSet, "extension needs an independent set");

  const auto pool = free_vertices(g, b);
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> chosen;
  for (std::size_t size = std::min(k, pool.size()); size > 0 && subsets.empty(); --size)
    independent_subsets(g, pool, size, 0, chosen, subsets);

  if (subsets.empty()) return {b};
  std::vector<Bitstring> out;
  out.reserve(subsets.size());
  for (const auto& sub : subsets) {
    Bitstring e = b;
    for (auto v : sub) e.set(v);
    out.push_back(std::move(e));
  }
  return out;
}

std::string_view to_string(ExtensionChoice choice) {
  return choice == ExtensionChoice::sample_one ? "sample_one" : "split_mass";
}

ExtensionChoice parse_extension_choice(std::string_view text) {
  if (text == "sample_one" || text == "sample") return ExtensionChoice::sample_one;
  if (text == "split_mass" || text == "split") return ExtensionChoice::split_mass;
  raise(ErrorKind::UnknownKind, "unknown extension choice '" + std::string(text) + "'");
}

namespace {

bool terminal(const std::vector<Bitstring>& cands, const Bitstring& b) {
  return cands.size() == 1 && cands.front() == b;
}

Bitstring extend_sampled(const Graph& g, Bitstring b, std::size_t k, Rng& rng) {
  for (;;) {
    auto cands = extend_greedy_depth_k(g, b, k);
    if (terminal(cands, b)) return b;
    b = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
  }
}

}  // namespace

PostprocessResult postprocess_distribution(const Graph& g, const Distribution& dist,
                                           const PostprocessOptions& options) {
  if (dist.bits() != g.order()) raise(ErrorKind::LengthMismatch, "distribution and graph sizes differ");
  if (options.depth > kMaxExtensionDepth)
    raise(ErrorKind::DepthTooLarge, "extension depth " + std::to_string(options.depth) + " exceeds " +
                                        std::to_string(kMaxExtensionDepth));
  const double total = dist.total();
  if (!(total > 0.0)) raise(ErrorKind::EmptyDistribution, "nothing to postprocess");

  PostprocessResult res;
  res.dist = Distribution(dist.bits(), dist.mode());
  double in_bits = 0.0, repaired_bits = 0.0, out_bits = 0.0;

  std::map<Bitstring, double> frontier;
  for (const auto& [b, w] : dist.entries()) {
    const RepairResult r = repair_to_is(g, b, options.seed);
    in_bits += w * static_cast<double>(b.count());
    repaired_bits += w * static_cast<double>(r.set.count());
    if (options.choice == ExtensionChoice::split_mass) {
      frontier[r.set] += w;
      continue;
    }
    Rng rng(derive_seed(options.seed ^ 0x5eedULL, b.hash()));
    // Integral counts are extended shot by shot.
    const bool per_shot = dist.mode() == DistributionMode::counts && w == std::floor(w) && w <= 1e7;
    const std::size_t units = per_shot ? static_cast<std::size_t>(w) : 1;
    const double share = per_shot ? 1.0 : w;
    for (std::size_t u = 0; u < units; ++u) frontier[extend_sampled(g, r.set, options.depth, rng)] += share;
  }

  if (options.choice == ExtensionChoice::sample_one) {
    for (const auto& [b, w] : frontier) res.dist.add(b, w);
  } else {
    while (!frontier.empty()) {
      std::map<Bitstring, double> next;
      for (const auto& [b, w] : frontier) {
        const auto cands = extend_greedy_depth_k(g, b, options.depth);
        if (terminal(cands, b)) {
          res.dist.add(b, w);
          continue;
        }
        const double share = w / static_cast<double>(cands.size());
        for (const auto& c : cands) next[c] += share;
      }
      frontier = std::move(next);
    }
  }
  for (const auto& [b, w] : res.dist.entries()) out_bits += w * static_cast<double>(b.count());
  res.avg_removed = (in_bits - repaired_bits) / total;
  res.avg_added = (out_bits - repaired_bits) / total;
  return res;
}

}  // namespace rydmis
