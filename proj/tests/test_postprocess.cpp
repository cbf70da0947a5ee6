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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rydmis/error.hpp"
#include "rydmis/postprocess.hpp"

namespace rydmis {
namespace {

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

Bitstring bs(std::string_view s) { return Bitstring::from_string(s); }

std::set<Bitstring> as_set(const std::vector<Bitstring>& v) { return {v.begin(), v.end()}; }

// Exhaustive oracle: largest independent supersets of b adding at most k vertices.
std::set<Bitstring> brute_extend(const Graph& g, const Bitstring& b, std::size_t k) {
  const std::size_t n = g.order();
  const std::uint64_t base = b.to_index();
  std::set<Bitstring> best;
  std::size_t best_add = 0;
  for (std::uint64_t extra = 0; extra < (std::uint64_t{1} << n); ++extra) {
    if (extra & base) continue;
    const auto add = static_cast<std::size_t>(std::popcount(extra));
    if (add > k) continue;
    const auto cand = Bitstring::from_index(base | extra, n);
    if (!is_independent_set(g, cand)) continue;
    if (add > best_add) {
      best.clear();
      best_add = add;
    }
    if (add == best_add) best.insert(cand);
  }
  return best;
}

TEST(Repair, DropsTheMostConflictedVertex) {
  const auto r = repair_to_is(path(3), bs("111"));
  EXPECT_EQ(r.set, bs("101"));
  EXPECT_EQ(r.removed, 1u);
  const auto ok = repair_to_is(path(3), bs("101"));
  EXPECT_EQ(ok.set, bs("101"));
  EXPECT_EQ(ok.removed, 0u);
}

TEST(Repair, AlwaysYieldsIndependentSubsets) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = random_graph(10, 0.3, s);
    std::mt19937_64 rng(100 + s);
    for (int rep = 0; rep < 20; ++rep) {
      const auto b = Bitstring::from_index(rng() & 0x3ff, 10);
      const auto r = repair_to_is(g, b, s);
      EXPECT_TRUE(is_independent_set(g, r.set));
      EXPECT_TRUE(r.set.is_subset_of(b));
      EXPECT_EQ(r.removed, b.count() - r.set.count());
      EXPECT_EQ(repair_to_is(g, b, s).set, r.set);
    }
  }
}

TEST(Extend, PathExamples) {
  EXPECT_EQ(as_set(extend_greedy_depth_k(path(3), bs("100"), 1)), (std::set{bs("101")}));
  EXPECT_EQ(as_set(extend_greedy_depth_k(path(3), bs("000"), 1)), (std::set{bs("100"), bs("010"), bs("001")}));
  EXPECT_EQ(as_set(extend_greedy_depth_k(path(3), bs("000"), 2)), (std::set{bs("101")}));
  EXPECT_EQ(extend_greedy_depth_k(path(3), bs("101"), 2), std::vector{bs("101")});
  EXPECT_EQ(extend_greedy_depth_k(path(3), bs("000"), 0), std::vector{bs("000")});
}

TEST(Extend, Errors) {
  try {
    extend_greedy_depth_k(path(3), bs("000"), kMaxExtensionDepth + 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DepthTooLarge);
  }
  EXPECT_THROW(extend_greedy_depth_k(path(3), bs("110"), 1), Error);
  EXPECT_THROW(extend_greedy_depth_k(path(3), bs("10"), 1), Error);
}

TEST(Extend, MatchesExhaustiveSearchOnTenVertices) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto g = random_graph(10, 0.25, 40 + s);
    const auto mis = mis_exact(g, true);
    for (const auto& m : mis.maximum_sets) {
      // Every MIS−1 state one removal away completes back to a maximum set.
      for (std::size_t v : m.selected()) {
        auto b = m;
        b.reset(v);
        for (std::size_t k = 1; k <= kMaxExtensionDepth; ++k) {
          const auto got = as_set(extend_greedy_depth_k(g, b, k));
          EXPECT_EQ(got, brute_extend(g, b, k));
          EXPECT_TRUE(got.count(m));
          for (const auto& c : got) EXPECT_EQ(c.count(), mis.size);
        }
      }
    }
    std::mt19937_64 rng(s);
    for (int rep = 0; rep < 10; ++rep) {
      const auto b = repair_to_is(g, Bitstring::from_index(rng() & 0x3ff, 10)).set;
      for (std::size_t k = 0; k <= kMaxExtensionDepth; ++k) {
        const auto want = k == 0 ? std::set{b} : brute_extend(g, b, k);
        EXPECT_EQ(as_set(extend_greedy_depth_k(g, b, k)), want);
      }
    }
  }
}

TEST(ExtensionChoice, Names) {
  EXPECT_EQ(parse_extension_choice(to_string(ExtensionChoice::split_mass)), ExtensionChoice::split_mass);
  EXPECT_EQ(parse_extension_choice(to_string(ExtensionChoice::sample_one)), ExtensionChoice::sample_one);
  EXPECT_THROW(parse_extension_choice("all"), Error);
}

Distribution noisy_counts(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Distribution d(g.order(), DistributionMode::counts);
  for (int i = 0; i < 300; ++i) d.add(Bitstring::from_index(rng() & ((1u << g.order()) - 1), g.order()), 1.0);
  return d;
}

TEST(Postprocess, OutputsAreMaximalIndependentSets) {
  const auto g = random_graph(9, 0.3, 5);
  const auto d = noisy_counts(g, 1);
  for (auto choice : {ExtensionChoice::sample_one, ExtensionChoice::split_mass}) {
    const auto r = postprocess_distribution(g, d, {1, choice, 3});
    EXPECT_NEAR(r.dist.total(), d.total(), 1e-9);
    for (const auto& [b, w] : r.dist.entries()) {
      EXPECT_TRUE(is_independent_set(g, b));
      EXPECT_EQ(extend_greedy_depth_k(g, b, 1), std::vector{b});
    }
    EXPECT_GT(r.avg_removed, 0.0);
  }
  EXPECT_EQ(postprocess_distribution(g, d, {1, ExtensionChoice::sample_one, 3}).dist.mode(), DistributionMode::counts);
}

TEST(Postprocess, IsIdempotent) {
  const auto g = random_graph(9, 0.3, 6);
  const auto d = noisy_counts(g, 2);
  for (auto choice : {ExtensionChoice::sample_one, ExtensionChoice::split_mass}) {
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto once = postprocess_distribution(g, d, {k, choice, 9});
      const auto twice = postprocess_distribution(g, once.dist, {k, choice, 9});
      EXPECT_LT(total_variation(once.dist, twice.dist), 1e-12);
      EXPECT_DOUBLE_EQ(twice.avg_removed, 0.0);
      EXPECT_DOUBLE_EQ(twice.avg_added, 0.0);
    }
  }
}

TEST(Postprocess, DepthZeroOnlyRepairs) {
  Distribution d(3, DistributionMode::probabilities);
  d.add(bs("111"), 0.5);
  d.add(bs("100"), 0.5);
  const auto r = postprocess_distribution(path(3), d, {0, ExtensionChoice::split_mass, 0});
  EXPECT_DOUBLE_EQ(r.dist.probability(bs("101")), 0.5);
  EXPECT_DOUBLE_EQ(r.dist.probability(bs("100")), 0.5);
  EXPECT_DOUBLE_EQ(r.avg_added, 0.0);
}

TEST(Postprocess, SplitMassSharesWeightEvenly) {
  Distribution d(3, DistributionMode::probabilities);
  d.add(bs("000"), 1.0);
  const auto r = postprocess_distribution(path(3), d, {1, ExtensionChoice::split_mass, 0});
  // Round one: 100, 010, 001 at 1/3 each; 100 and 001 then complete to 101.
  EXPECT_NEAR(r.dist.probability(bs("101")), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.dist.probability(bs("010")), 1.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace rydmis
