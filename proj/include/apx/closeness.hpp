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

#ifndef APX_CLOSENESS_HPP_
#define APX_CLOSENESS_HPP_

#include <algorithm>
#include <span>
#include <vector>

#include "apx/core.hpp"
#include "apx/estimate.hpp"
#include "apx/graph.hpp"
#include "apx/overlay.hpp"
#include "apx/parallel.hpp"
#include "apx/pivots.hpp"
#include "apx/sampling.hpp"

namespace apx {

struct ClosenessConfig {
  std::vector<std::uint64_t> tau;  // edge-degree threshold per level
  QueueKind queue = QueueKind::automatic;
  unsigned threads = 1;
};

inline ClosenessConfig make_closeness_config(std::size_t n, std::uint32_t L, double c_deg,
                                             unsigned threads = 1) {
  ClosenessConfig cfg;
  cfg.threads = threads;
  for (std::uint32_t i = 0; i < L; ++i) cfg.tau.push_back(thresholds::level(n, i, c_deg));
  return cfg;
}

// Shortest distances from w in H_w = filtered unit edges + star edges
// [w, x] weighted by star_row[x] + pivot edges at every level.
inline std::span<const Distance> update_from(Vertex w, const FilteredGraph& filtered,
                                             std::span<const Distance> star_row,
                                             const PivotTable& pivots,
                                             const PivotInverse& inverse, Dijkstra& engine,
                                             QueueKind queue = QueueKind::automatic,
                                             std::uint64_t* edge_scans = nullptr) {
  const OverlayGraph h{&filtered, w, star_row, &pivots, &inverse};
  return engine.run(h, w, queue, edge_scans);
}

// Convenience form: relaxes est(w, x) with dist_{H_w}(x) for every x.
inline void update_from(Vertex w, std::uint32_t i, const Graph& g, EstimateMatrix& est,
                        const PivotTable& pivots, const PivotInverse& inverse,
                        const ClosenessConfig& cfg) {
  const FilteredGraph filtered(g, cfg.tau.at(i));
  Dijkstra engine(g.num_vertices());
  const std::vector<Distance> star(est.row(w).begin(), est.row(w).end());
  auto dist = update_from(w, filtered, star, pivots, inverse, engine, cfg.queue);
  for (Vertex x = 0; x < g.num_vertices(); ++x) est.relax(w, x, dist[x]);
}

// est(s,t) <- d(s, pivot_i(s)) + est(pivot_i(s), t) for all t.
inline void triangulate(Vertex s, std::uint32_t i, EstimateMatrix& est,
                        const PivotTable& pivots) {
  if (!pivots.defined(i, s)) return;
  const Vertex p = pivots.pivot(i, s);
  if (p == s) return;
  const Distance ds = pivots.distance(i, s);
  for (Vertex t = 0; t < est.size(); ++t) est.relax(s, t, sat_add(ds, est.at(p, t)));
}

// UpdateFrom for every w in `sources`, all reading the same snapshot; each
// result lowers row w, then the matrix is re-symmetrized.
inline void update_from_part(std::span<const Vertex> sources, const FilteredGraph& filtered,
                             EstimateMatrix& est, const PivotTable& pivots,
                             const PivotInverse& inverse, const ClosenessConfig& cfg,
                             OpCounters* counters = nullptr) {
  if (sources.empty()) return;
  const Vertex n = est.size();
  const EstimateMatrix snap = est;
  const unsigned threads = std::max(1u, cfg.threads);
  std::vector<Dijkstra> engines;
  engines.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  CounterSlots slots(threads);
  parallel_for(
      sources.size(), threads,
      [&](std::size_t idx, unsigned tid) {
        const Vertex w = sources[idx];
        auto dist = update_from(w, filtered, snap.row(w), pivots, inverse, engines[tid],
                                cfg.queue, &slots[tid].edge_scans);
        Distance* row = est.mutable_row(w);
        for (Vertex x = 0; x < n; ++x)
          if (dist[x] < row[x]) row[x] = dist[x];
        slots[tid].relaxations += n;
      },
      4);
  est.symmetrize_min();
  if (counters != nullptr) *counters += slots.sum();
}

// Triangulate(s, i) for every s, reading one snapshot.
inline void triangulate_part(std::uint32_t i, EstimateMatrix& est, const PivotTable& pivots,
                             const ClosenessConfig& cfg, OpCounters* counters = nullptr) {
  const Vertex n = est.size();
  const EstimateMatrix snap = est;
  const unsigned threads = std::max(1u, cfg.threads);
  CounterSlots slots(threads);
  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex s = static_cast<Vertex>(idx);
    if (!pivots.defined(i, s)) return;
    const Vertex p = pivots.pivot(i, s);
    if (p == s) return;
    const Distance ds = pivots.distance(i, s);
    auto prow = snap.row(p);
    Distance* row = est.mutable_row(s);
    for (Vertex t = 0; t < n; ++t) {
      const Distance val = sat_add(ds, prow[t]);
      if (val < row[t]) row[t] = val;
    }
    slots[tid].relaxations += n;
  });
  est.symmetrize_min();
  if (counters != nullptr) *counters += slots.sum();
}

// Per level i: two UpdateFrom passes over A_i (the second sees the first's
// results), then Triangulate for every vertex.
inline void ensure_closeness_level(std::uint32_t i, const FilteredGraph& filtered,
                                   EstimateMatrix& est, const SampleHierarchy& h,
                                   const PivotTable& pivots, const PivotInverse& inverse,
                                   const ClosenessConfig& cfg, OpCounters* counters = nullptr) {
  update_from_part(h.level(i), filtered, est, pivots, inverse, cfg, counters);
  update_from_part(h.level(i), filtered, est, pivots, inverse, cfg, counters);
  triangulate_part(i, est, pivots, cfg, counters);
}

inline void ensure_closeness(const Graph& g, EstimateMatrix& est, const SampleHierarchy& h,
                             const PivotTable& pivots, const PivotInverse& inverse,
                             const ClosenessConfig& cfg, OpCounters* counters = nullptr) {
  for (std::uint32_t i = 0; i < h.L; ++i) {
    const FilteredGraph filtered(g, cfg.tau.at(i));
    ensure_closeness_level(i, filtered, est, h, pivots, inverse, cfg, counters);
  }
}

}  // namespace apx

#endif  // APX_CLOSENESS_HPP_
