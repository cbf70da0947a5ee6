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

#include <cmath>

#include "rydmis/embedding.hpp"
#include "rydmis/error.hpp"

namespace rydmis {
namespace {

TEST(BlockadeRadius, GeometricMean) {
  EXPECT_DOUBLE_EQ(blockade_radius(5, 20).radius, 10.0);
  EXPECT_NEAR(blockade_radius(5, 5 * std::sqrt(2.0)).radius, 5 * std::pow(2.0, 0.25), 1e-12);
  const auto deg = blockade_radius(5, 5);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_DOUBLE_EQ(deg.radius, 5.0);
  EXPECT_THROW(blockade_radius(6, 5), Error);
}

TEST(LatticeEmbedding, IdentityAndRoundTrip) {
  const auto lat = generate_lattice(LatticeKind::triangular, 6, 6, 5.0);
  const std::vector<std::size_t> sizes{6, 9};
  for (const auto& g : sample_family(lat, sizes, 4, 8)) {
    const Register reg = embed_on_lattice(g);
    EXPECT_EQ(reg.positions, g.positions());
    const auto rebuilt = build_unit_disk_graph(reg.positions, g.blockade_radius());
    EXPECT_EQ(rebuilt.graph(), g.graph());
    const auto rep = validate_embedding(g.graph(), reg, g.blockade_radius());
    EXPECT_GT(rep.ratio_worst, 1.0);
    EXPECT_TRUE(rep.edges_match);
  }
}

TEST(LatticeEmbedding, HundredAtomsKeepSpacing) {
  const auto lat = generate_lattice(LatticeKind::triangular, 14, 14, 5.0);
  const std::vector<std::size_t> sizes{100};
  const auto g = sample_family(lat, sizes, 1, 4).front();
  const Register reg = embed_on_lattice(g);
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j)
      EXPECT_GE(distance(reg.positions[i], reg.positions[j]), 5.0 - 1e-9);
}

TEST(LatticeEmbedding, NeedsProvenance) {
  const std::vector<Point> pts{{0, 0}, {5, 0}};
  try {
    embed_on_lattice(build_unit_disk_graph(pts, 6.0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingProvenance);
  }
}

TEST(ForceDirected, PathIsNearlyCollinear) {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  const auto res = embed_force_directed(p3, 5);
  const auto& x = res.reg.positions;
  const double a = distance(x[0], x[1]), b = distance(x[1], x[2]), c = distance(x[0], x[2]);
  EXPECT_NEAR(a, 6.0, 0.6);
  EXPECT_NEAR(b, 6.0, 0.6);
  EXPECT_GT(c, 1.35 * std::max(a, b));
  EXPECT_GT(c / (a + b), 0.9);
}

TEST(ForceDirected, TriangleIsEquilateral) {
  Graph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(1, 2);
  k3.add_edge(0, 2);
  const auto res = embed_force_directed(k3, 6);
  const auto& x = res.reg.positions;
  const double a = distance(x[0], x[1]), b = distance(x[1], x[2]), c = distance(x[0], x[2]);
  EXPECT_NEAR(a / b, 1.0, 0.05);
  EXPECT_NEAR(b / c, 1.0, 0.05);
}

TEST(ForceDirected, SingleVertexAtOrigin) {
  const auto res = embed_force_directed(Graph(1), 0);
  ASSERT_EQ(res.reg.size(), 1u);
  EXPECT_EQ(res.reg.positions[0], (Point{0.0, 0.0}));
}

TEST(ForceDirected, DeterministicUnderSeed) {
  const auto lat = generate_lattice(LatticeKind::triangular, 5, 5, 5.0);
  const std::vector<std::size_t> sizes{8};
  const auto g = sample_family(lat, sizes, 1, 3).front();
  EXPECT_EQ(embed_force_directed(g.graph(), 9).reg.positions, embed_force_directed(g.graph(), 9).reg.positions);
}

TEST(ForceDirected, RecoversMostTriangularFamilyGraphs) {
  const auto lat = generate_lattice(LatticeKind::triangular, 6, 6, 5.0);
  const std::vector<std::size_t> sizes{4, 5, 6, 7, 8, 9, 10};
  const auto fam = sample_family(lat, sizes, 6, 21);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    try {
      const auto res = embed_force_directed(fam[i].graph(), i);
      const auto rebuilt = build_unit_disk_graph(res.reg.positions, res.blockade_radius);
      if (rebuilt.graph() == fam[i].graph()) ++ok;
    } catch (const Error&) {
    }
  }
  EXPECT_GE(static_cast<double>(ok), 0.9 * static_cast<double>(fam.size())) << ok << "/" << fam.size();
}

TEST(Validate, PerfectEmbeddingHasNoResidual) {
  Graph g(2);
  g.add_edge(0, 1);
  const Register reg{{{0, 0}, {6, 0}}, std::nullopt};
  const auto rep = validate_embedding(g, reg, 6.0);
  EXPECT_DOUBLE_EQ(rep.edge_residual, 0.0);
  EXPECT_DOUBLE_EQ(rep.tail_residual, 0.0);
}

TEST(Validate, SquareDiagonalsCarryAnEighth) {
  Graph c4(4);
  for (std::size_t i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  const double a = 5.0;
  const Register reg{{{0, 0}, {a, 0}, {a, a}, {0, a}}, std::nullopt};
  const auto rep = validate_embedding(c4, reg, 6.0);
  EXPECT_NEAR(rep.tail_residual, 2.0 * interaction_strength(a) / 8.0, 1e-9 * interaction_strength(a));
  EXPECT_TRUE(rep.tail_hazard);
  EXPECT_TRUE(rep.edges_match);
}

TEST(Validate, PathTailIsTheEndToEndInteraction) {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  const Register reg{{{0, 0}, {5, 0}, {10, 0}}, std::nullopt};
  const auto rep = validate_embedding(p3, reg, 6.0);
  EXPECT_NEAR(rep.tail_residual, kTwoPi * 138000.0 / 1e6, 1e-12);
  EXPECT_DOUBLE_EQ(rep.ratio_worst, 2.0);
  EXPECT_TRUE(rep.accepted);
  EXPECT_FALSE(rep.tail_hazard);
}

TEST(Validate, MismatchedRadiusIsRejected) {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  const Register reg{{{0, 0}, {5, 0}, {10, 0}}, std::nullopt};
  EXPECT_FALSE(validate_embedding(p3, reg, 4.0).accepted);
}

}  // namespace
}  // namespace rydmis
