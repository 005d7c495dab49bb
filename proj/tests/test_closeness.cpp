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

// Bellman-Ford over the explicit overlay edges.
std::vector<Distance> bellman_ford(const OverlayGraph& h, Vertex source) {
  const Vertex n = h.num_vertices();
  std::vector<Distance> d(n, kInfinity);
  d[source] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex u = 0; u < n; ++u) {
      if (d[u] == kInfinity) continue;
      h.for_each_edge(u, [&](Vertex v, Distance w) {
        const Distance nd = sat_add(d[u], w);
        if (nd < d[v]) {
          d[v] = nd;
          changed = true;
        }
      });
    }
  }
  return d;
}

struct Fixture {
  Graph g;
  Structures st;
  EstimateMatrix est;
};

Fixture make(Graph g, std::uint64_t seed) {
  Fixture f{std::move(g), {}, {}};
  RunConfig cfg;
  cfg.seed = seed;
  f.st = build_structures(f.g, cfg);
  f.est = init_21_approx(f.g, InitVariant::adversarial);
  return f;
}

TEST(Dijkstra, MatchesBellmanFord) {
  Fixture f = make(gen_power_law(250, 2.3, 6, 7), 7);
  FilteredGraph filtered(f.g, 5);
  for (Vertex w : {0u, 17u, 120u, 249u}) {
    const OverlayGraph h{&filtered, w, f.est.row(w), &f.st.pivots, &f.st.inverse};
    auto expected = bellman_ford(h, w);
    EXPECT_EQ(dijkstra_sssp(h, w, QueueKind::binary_heap), expected);
    EXPECT_EQ(dijkstra_sssp(h, w, QueueKind::bucket), expected);
    EXPECT_EQ(dijkstra_sssp(h, w, QueueKind::automatic), expected);
  }
}

TEST(Dijkstra, PlainGraphIsBfs) {
  Graph g = gen_grid(6, 7);
  FilteredGraph filtered(g, 1000);
  OverlayGraph h;
  h.base = &filtered;
  EXPECT_EQ(dijkstra_sssp(h, 3), bfs_sssp(g, 3));
}

TEST(Dijkstra, EngineReuse) {
  Fixture f = make(gen_gnp(150, 0.04, 2), 2);
  FilteredGraph filtered(f.g, 8);
  Dijkstra engine(150);
  for (Vertex w = 0; w < 150; w += 13) {
    const OverlayGraph h{&filtered, w, f.est.row(w), &f.st.pivots, &f.st.inverse};
    auto a = engine.run(h, w, QueueKind::bucket);
    std::vector<Distance> got(a.begin(), a.end());
    EXPECT_EQ(got, bellman_ford(h, w));
  }
}

// Every overlay edge is a G-walk of at least its weight, so UpdateFrom
// results never go below the true distance.
TEST(UpdateFrom, SoundAndCoversFilteredDistances) {
  Fixture f = make(gen_path_with_chords(300, 3, 5), 5);
  const auto cfg = make_closeness_config(300, f.st.hierarchy.L, 4);
  EstimateMatrix exact = init_21_approx(f.g, InitVariant::exact);
  for (std::uint32_t i = 0; i < f.st.hierarchy.L; ++i) {
    FilteredGraph filtered(f.g, cfg.tau[i]);
    for (Vertex w : f.st.hierarchy.level(i)) {
      if (w % 7 != 0) continue;
      update_from(w, i, f.g, f.est, f.st.pivots, f.st.inverse, cfg);
      auto dh = bfs_sssp(filtered, w);
      for (Vertex x = 0; x < 300; ++x) {
        ASSERT_GE(f.est.at(w, x), exact.at(w, x));
        ASSERT_LE(f.est.at(w, x), dh[x]);
      }
    }
  }
}

TEST(Triangulate, UsesPivotRow) {
  Graph g = gen_path(10);
  PivotTable pt(10, 2);
  pt.set_level(0, {std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
                   std::vector<Distance>(10, 0)});
  PivotLevel l1{std::vector<Vertex>(10, 5), std::vector<Distance>(10)};
  for (Vertex v = 0; v < 10; ++v) l1.dist[v] = v > 5 ? v - 5 : 5 - v;
  pt.set_level(1, l1);
  EstimateMatrix est(10);
  est.relax(5, 9, 4);
  triangulate(2, 1, est, pt);
  EXPECT_EQ(est.at(2, 9), 3u + 4u);
  EXPECT_EQ(est.at(2, 5), 3u);  // via est(5,5) = 0
  EXPECT_EQ(est.at(2, 8), kInfinity);
  triangulate(5, 1, est, pt);  // pivot is itself: no-op
  EXPECT_EQ(est.at(5, 9), 4u);
}

TEST(EnsureCloseness, SoundAndThreadIndependent) {
  Fixture f = make(gen_power_law(400, 2.2, 6, 3), 3);
  EstimateMatrix exact = init_21_approx(f.g, InitVariant::exact);
  std::uint64_t digest = 0;
  for (unsigned threads : {1u, 2u, 4u}) {
    EstimateMatrix est = f.est;
    const auto cfg = make_closeness_config(400, f.st.hierarchy.L, 0.5, threads);
    OpCounters c;
    ensure_closeness(f.g, est, f.st.hierarchy, f.st.pivots, f.st.inverse, cfg, &c);
    EXPECT_GT(c.edge_scans, 0u);
    EXPECT_TRUE(est.is_symmetric());
    for (Vertex s = 0; s < 400; ++s)
      for (Vertex t = 0; t < 400; ++t) ASSERT_GE(est.at(s, t), exact.at(s, t));
    if (threads == 1) digest = est.digest();
    EXPECT_EQ(est.digest(), digest) << threads << " threads";
  }
}

TEST(EnsureCloseness, OnlyDecreases) {
  Fixture f = make(gen_gnp(200, 0.03, 9), 9);
  const EstimateMatrix before = f.est;
  const auto cfg = make_closeness_config(200, f.st.hierarchy.L, 4);
  ensure_closeness(f.g, f.est, f.st.hierarchy, f.st.pivots, f.st.inverse, cfg);
  for (Vertex s = 0; s < 200; ++s)
    for (Vertex t = 0; t < 200; ++t) ASSERT_LE(f.est.at(s, t), before.at(s, t));
}

}  // namespace
}  // namespace apx
