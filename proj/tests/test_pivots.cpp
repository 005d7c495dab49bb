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

#include "apx/apx.hpp"

namespace apx {
namespace {

TEST(Thresholds, Values) {
  // n = 1024: ceil log2 = 10.
  EXPECT_EQ(thresholds::level(1024, 0, 4), 4u * 2 * 10);
  EXPECT_EQ(thresholds::level(1024, 2, 4), 4u * 16 * 10);
  EXPECT_EQ(thresholds::low_degree(1024, 4), 4u * 32 * 10);
  EXPECT_EQ(thresholds::base(1024, 5, 4), 4u * 64 * 10);
  EXPECT_DOUBLE_EQ(thresholds::ball_size(1024, 1, 4), 4.0 * 4 * 10);
}

TEST(Pivots, LevelZeroIsIdentity) {
  Graph g = gen_gnp(100, 0.05, 1);
  SampleHierarchy h = build_hierarchy(100, 1);
  PivotLevel p = compute_pivots(g, h, 0, PivotMode::fast, 10);
  for (Vertex v = 0; v < 100; ++v) {
    EXPECT_EQ(p.pivot[v], v);
    EXPECT_EQ(p.dist[v], 0u);
  }
  EXPECT_THROW(compute_pivots(g, h, h.L, PivotMode::reference, 10), InputError);
}

// Brute force: nearest member by exact distance, smallest id on ties.
PivotLevel brute_pivots(const Graph& g, const std::vector<Vertex>& members) {
  const Vertex n = g.num_vertices();
  PivotLevel out{std::vector<Vertex>(n, kNoVertex), std::vector<Distance>(n, kInfinity)};
  for (Vertex s = 0; s < n; ++s) {
    auto d = bfs_sssp(g, s);
    for (Vertex w : members) {
      if (d[w] == kInfinity) continue;
      if (d[w] < out.dist[s] || (d[w] == out.dist[s] && w < out.pivot[s])) {
        out.dist[s] = d[w];
        out.pivot[s] = w;
      }
    }
  }
  return out;
}

TEST(Pivots, ReferenceMatchesBruteForce) {
  Graph g = gen_gnp(200, 0.03, 8);
  SampleHierarchy h = build_hierarchy(200, 8);
  for (std::uint32_t i = 0; i < h.L; ++i) {
    PivotLevel ref = compute_pivots(g, h, i, PivotMode::reference, 0);
    PivotLevel brute = brute_pivots(g, h.level(i));
    EXPECT_EQ(ref.pivot, brute.pivot) << "level " << i;
    EXPECT_EQ(ref.dist, brute.dist) << "level " << i;
  }
}

TEST(Pivots, FastMatchesReference) {
  Graph g = gen_gnp(200, 0.05, 3);
  SampleHierarchy h = build_hierarchy(200, 3);
  for (std::uint32_t i = 0; i < h.L; ++i) {
    PivotLevel ref = compute_pivots(g, h, i, PivotMode::reference, 0);
    for (unsigned threads : {1u, 3u}) {
      PivotLevel fast = compute_pivots(g, h, i, PivotMode::fast, thresholds::level(200, i, 4),
                                       nullptr, threads);
      EXPECT_EQ(fast.pivot, ref.pivot) << "level " << i;
      EXPECT_EQ(fast.dist, ref.dist) << "level " << i;
    }
  }
}

TEST(Pivots, FastNeverBelowReference) {
  // A tiny threshold starves the fast search; it may miss pivots but never
  // reports a distance shorter than the true one.
  Graph g = gen_power_law(300, 2.2, 6, 2);
  SampleHierarchy h = build_hierarchy(300, 2);
  for (std::uint32_t i = 1; i < h.L; ++i) {
    PivotLevel ref = compute_pivots(g, h, i, PivotMode::reference, 0);
    PivotLevel fast = compute_pivots(g, h, i, PivotMode::fast, 1);
    for (Vertex s = 0; s < 300; ++s) EXPECT_GE(fast.dist[s], ref.dist[s]);
  }
}

TEST(Balls, MatchBruteForce) {
  Graph g = gen_path_with_chords(300, 2, 4);
  SampleHierarchy h = build_hierarchy(300, 4);
  PivotTable pt(300, h.L);
  for (std::uint32_t i = 0; i < h.L; ++i)
    pt.set_level(i, compute_pivots(g, h, i, PivotMode::reference, 0));
  for (std::uint32_t i = 0; i < h.L; ++i) {
    BallLevel balls = compute_balls(g, pt, i, nullptr, 2);
    for (Vertex s = 0; s < 300; ++s) {
      auto d = bfs_sssp(g, s);
      std::vector<BallEntry> expected;
      for (Vertex v = 0; v < 300; ++v)
        if (d[v] < pt.distance(i, s)) expected.push_back({v, d[v]});
      std::sort(expected.begin(), expected.end(), [](auto& a, auto& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.vertex < b.vertex;
      });
      auto got = balls.ball(s);
      ASSERT_EQ(std::vector<BallEntry>(got.begin(), got.end()), expected) << "s=" << s;
    }
  }
}

TEST(Pivots, InverseIsConsistent) {
  Graph g = gen_gnp(150, 0.04, 6);
  SampleHierarchy h = build_hierarchy(150, 6);
  PivotTable pt(150, h.L);
  for (std::uint32_t i = 0; i < h.L; ++i)
    pt.set_level(i, compute_pivots(g, h, i, PivotMode::reference, 0));
  for (std::uint32_t i = 0; i < h.L; ++i) {
    InverseLevel inv = invert_pivots(pt, i);
    std::size_t total = 0;
    for (Vertex x = 0; x < 150; ++x) {
      for (Vertex w : inv.of(x)) EXPECT_EQ(pt.pivot(i, w), x);
      total += inv.of(x).size();
    }
    std::size_t defined = 0;
    for (Vertex w = 0; w < 150; ++w) defined += pt.defined(i, w);
    EXPECT_EQ(total, defined);
  }
}

TEST(Pivots, UnreachableLevelIsUndefined) {
  // Two components; A_1 drawn only in one of them leaves the other undefined.
  Graph g = from_edge_list({{0, 1}, {2, 3}}, 4);
  SampleHierarchy h;
  h.n = 4;
  h.L = 2;
  h.levels = {{0, 1, 2, 3}, {0}};
  h.level_of = {1, 0, 0, 0};
  PivotLevel p = compute_pivots(g, h, 1, PivotMode::reference, 0);
  EXPECT_EQ(p.pivot[1], 0u);
  EXPECT_EQ(p.dist[1], 1u);
  EXPECT_EQ(p.pivot[3], kNoVertex);
  EXPECT_EQ(p.dist[3], kInfinity);
}

}  // namespace
}  // namespace apx
