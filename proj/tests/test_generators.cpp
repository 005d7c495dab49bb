// Copyright 2026 The apx Authors
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

#include <sstream>

#include "apx/apx.hpp"

namespace apx {
namespace {

std::string dump(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

TEST(Generators, PathFive) {
  Graph g = generate({.family = "path", .n = 5});
  EXPECT_EQ(dump(g), "5 4\n0 1\n1 2\n2 3\n3 4\n");
}

TEST(Generators, GridThreeByThree) {
  Graph g = generate({.family = "grid", .rows = 3, .cols = 3});
  EXPECT_EQ(g.num_vertices(), 9u);
  EXPECT_EQ(g.num_edges(), 12u);
}

TEST(Generators, GridFromN) {
  Graph g = generate({.family = "grid", .n = 64});
  EXPECT_EQ(g.num_vertices(), 64u);
  EXPECT_EQ(g.num_edges(), 2u * 8 * 7);
  Graph h = generate({.family = "grid", .n = 512});  // 16 x 32
  EXPECT_EQ(h.num_vertices(), 512u);
  EXPECT_EQ(h.num_edges(), 16u * 31 + 32u * 15);
}

TEST(Generators, GnpDeterministic) {
  GeneratorSpec spec{.family = "gnp", .n = 100, .p = 0.05, .seed = 7};
  const std::string a = dump(generate(spec));
  EXPECT_EQ(a, dump(generate(spec)));
  spec.seed = 8;
  EXPECT_NE(a, dump(generate(spec)));
}

TEST(Generators, GnpPinnedEdgeCount) {
  // Frozen from the counter RNG; guards against silent stream changes.
  EXPECT_EQ(gen_gnp(100, 0.05, 7).num_edges(), 241u);
}

TEST(Generators, GnpEdgeCountNearMean) {
  const Graph g = gen_gnp(400, 0.05, 3);
  const double mean = 0.05 * 400 * 399 / 2;
  const double sd = std::sqrt(mean * 0.95);
  EXPECT_NEAR(static_cast<double>(g.num_edges()), mean, 4 * sd);
}

TEST(Generators, Barbell) {
  Graph g = gen_barbell(20, 5);
  // Two K5 (10 edges each) and the path 4-5-...-15 (11 edges).
  EXPECT_EQ(g.num_edges(), 31u);
  auto d = bfs_sssp(g, 0);
  EXPECT_EQ(d[19], 1u + 11u + 1u);
  EXPECT_THROW(gen_barbell(10, 6), InputError);
}

TEST(Generators, PathWithChordsIsConnectedWithHubs) {
  Graph g = gen_path_with_chords(400, 3, 1);
  auto d = bfs_sssp(g, 0);
  for (Vertex v = 0; v < 400; ++v) ASSERT_NE(d[v], kInfinity);
  EXPECT_GE(g.max_degree(), 2u * 20);
  // Distant pairs survive the hubs and chords.
  Distance far = 0;
  for (Distance x : d) far = std::max(far, x);
  EXPECT_GE(far, 36u);
  Graph plain = gen_path_with_chords(400, 0, 1);
  auto dp = bfs_sssp(plain, 0);
  EXPECT_GE(dp[399], 150u);
}

TEST(Generators, PowerLawMeanDegree) {
  Graph g = gen_power_law(1000, 2.5, 8, 4);
  const double mean = 2.0 * g.num_edges() / 1000;
  EXPECT_GT(mean, 5.0);
  EXPECT_LT(mean, 10.0);
  EXPECT_GT(g.max_degree(), 40u);
  EXPECT_THROW(gen_power_law(10, 1.0, 2, 1), InputError);
}

TEST(Generators, UnknownFamily) {
  EXPECT_THROW(generate({.family = "torus", .n = 10}), InputError);
  EXPECT_THROW(generate({.family = "gnp", .n = 10, .p = 1.5}), InputError);
}

}  // namespace
}  // namespace apx
