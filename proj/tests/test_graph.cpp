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

TEST(Graph, CanonicalizesEdgeList) {
  EdgeListStats stats;
  Graph g = from_edge_list({{0, 1}, {1, 0}, {2, 2}, {1, 2}, {1, 2}}, 4, &stats);
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(stats.duplicates_dropped, 2u);
  EXPECT_EQ(stats.self_loops_dropped, 1u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsOutOfRangeEdge) {
  EXPECT_THROW(from_edge_list({{0, 5}}, 3), InputError);
}

TEST(Graph, NeighborListsSorted) {
  Graph g = gen_gnp(120, 0.1, 4);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex u : nb) EXPECT_TRUE(g.has_edge(u, v));
  }
}

TEST(Graph, EdgeDegree) {
  // Star with center 0 and a tail 1-5.
  Graph g = from_edge_list({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}}, 6);
  EXPECT_EQ(edge_degree(g, 0, 1), 2u);
  EXPECT_EQ(edge_degree(g, 2, 0), 1u);
  EXPECT_THROW(edge_degree(g, 2, 3), ContractError);
}

TEST(Graph, FilteredViewMatchesBruteForce) {
  Graph g = gen_power_law(300, 2.3, 6, 5);
  for (std::uint64_t tau : {1u, 3u, 8u, 20u, 1000u}) {
    FilteredGraph f = degree_filtered_view(g, tau);
    std::size_t expected = 0;
    for (auto [u, v] : g.edges())
      if (std::min(g.degree(u), g.degree(v)) <= tau) ++expected;
    EXPECT_EQ(f.num_edges(), expected) << "tau=" << tau;
    for (Vertex u = 0; u < g.num_vertices(); ++u)
      for (Vertex v : f.neighbors(u)) EXPECT_LE(edge_degree(g, u, v), tau);
  }
}

TEST(Graph, EdgeListRoundTrip) {
  Graph g = gen_gnp(80, 0.07, 2);
  std::stringstream ss;
  write_edge_list(ss, g);
  Graph h = read_edge_list(ss);
  EXPECT_EQ(h.num_vertices(), g.num_vertices());
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(Graph, EdgeListErrors) {
  std::stringstream bad_header("x y");
  EXPECT_THROW(read_edge_list(bad_header), InputError);
  std::stringstream short_list("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(short_list), InputError);
  std::stringstream out_of_range("3 1\n0 3\n");
  EXPECT_THROW(read_edge_list(out_of_range), InputError);
  EXPECT_THROW(read_edge_list_file("/nonexistent/graph.txt"), InputError);
}

TEST(Bfs, PathDistances) {
  Graph g = gen_path(6);
  auto d = bfs_sssp(g, 0);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(d[v], v);
  auto capped = bfs_sssp(g, 0, 2);
  EXPECT_EQ(capped[2], 2u);
  EXPECT_EQ(capped[3], kInfinity);
}

TEST(Bfs, DisconnectedIsInfinite) {
  Graph g = from_edge_list({{0, 1}, {2, 3}}, 4);
  auto d = bfs_sssp(g, 0);
  EXPECT_EQ(d[1], 1u);
  EXPECT_EQ(d[2], kInfinity);
  EXPECT_THROW(bfs_sssp(g, 9), InputError);
}

TEST(Bfs, SourceFullAdjacencyOverlay) {
  // Hub 0 joined to everything; the filtered view drops those edges, but the
  // source still expands over its full adjacency.
  std::vector<Edge> e;
  for (Vertex v = 1; v < 10; ++v) e.push_back({0, v});
  e.push_back({1, 2});
  Graph g = from_edge_list(e, 10);
  FilteredGraph f(g, 0);
  Bfs bfs(10);
  bfs.run(f, 0, kInfinity, true);
  for (Vertex v = 1; v < 10; ++v) EXPECT_EQ(bfs.dist(v), 1u);
  bfs.run(f, 5, kInfinity, false);
  EXPECT_EQ(bfs.dist(0), kInfinity);
}

}  // namespace
}  // namespace apx
