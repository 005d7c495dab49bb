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

#ifndef APX_INIT_HPP_
#define APX_INIT_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "apx/bfs.hpp"
#include "apx/core.hpp"
#include "apx/estimate.hpp"
#include "apx/graph.hpp"
#include "apx/parallel.hpp"
#include "apx/pivots.hpp"
#include "apx/sampling.hpp"

namespace apx {

// exact: one BFS per vertex.
// additive2: dominating-set scheme with est <= d + 2.
// adversarial: est = 2d + (d mod 2), the largest walk length allowed by the
// 2d+1 contract. Needs exact distances, so it exists only to stress the
// later phases in tests and experiments.
enum class InitVariant { exact, additive2, adversarial };

enum class LowDegreeBackend { exact_on_subgraph, bk, none };

inline std::string to_string(InitVariant v) {
  switch (v) {
    case InitVariant::exact: return "exact";
    case InitVariant::additive2: return "additive2";
    case InitVariant::adversarial: return "adversarial";
  }
  return "?";
}

inline std::string to_string(LowDegreeBackend b) {
  switch (b) {
    case LowDegreeBackend::exact_on_subgraph: return "exact_on_subgraph";
    case LowDegreeBackend::bk: return "bk";
    case LowDegreeBackend::none: return "none";
  }
  return "?";
}

inline InitVariant parse_init_variant(const std::string& s) {
  if (s == "exact") return InitVariant::exact;
  if (s == "additive2") return InitVariant::additive2;
  if (s == "adversarial") return InitVariant::adversarial;
  throw InputError("unknown init variant '" + s + "' (exact|additive2|adversarial)");
}

inline LowDegreeBackend parse_low_degree_backend(const std::string& s) {
  if (s == "exact_on_subgraph" || s == "exact") return LowDegreeBackend::exact_on_subgraph;
  if (s == "bk") return LowDegreeBackend::bk;
  if (s == "none") return LowDegreeBackend::none;
  throw InputError("unknown low-degree backend '" + s + "' (exact_on_subgraph|bk|none)");
}

namespace detail {

// BFS from every vertex of `view`; row s is lowered with the BFS distances
// mapped through `f`. Distances are symmetric, so est stays symmetric.
template <class View, class F>
void all_sources_bfs(const View& view, EstimateMatrix& est, OpCounters* counters,
                     unsigned threads, F&& f) {
  const Vertex n = view.num_vertices();
  threads = std::max(1u, threads);
  std::vector<Bfs> engines;
  engines.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  CounterSlots slots(threads);
  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex s = static_cast<Vertex>(idx);
    auto& bfs = engines[tid];
    auto reached = bfs.run(view, s, kInfinity, false, &slots[tid].edge_scans);
    Distance* row = est.mutable_row(s);
    for (Vertex t : reached) {
      const Distance val = f(bfs.dist(t));
      if (val < row[t]) row[t] = val;
    }
    slots[tid].relaxations += reached.size();
  });
  if (counters != nullptr) *counters += slots.sum();
}

// Dial's algorithm over unit edges with arbitrary non-negative initial labels.
class MultiSourceUnitSssp {
 public:
  explicit MultiSourceUnitSssp(Vertex n) : dist_(n, kInfinity) {}

  template <class Adj>
  std::span<const Distance> run(Vertex n, std::span<const std::pair<Vertex, Distance>> seeds,
                                Adj&& adjacency, std::uint64_t* scans) {
    std::fill(dist_.begin(), dist_.end(), kInfinity);
    for (auto& b : buckets_) b.clear();
    auto push = [&](Vertex v, Distance d) {
      if (d >= buckets_.size()) buckets_.resize(static_cast<std::size_t>(d) + 1);
      buckets_[d].push_back(v);
    };
    for (auto [v, d] : seeds) {
      if (d < dist_[v]) {
        dist_[v] = d;
        push(v, d);
      }
    }
    std::uint64_t count = 0;
    for (std::size_t cur = 0; cur < buckets_.size(); ++cur) {
      for (std::size_t k = 0; k < buckets_[cur].size(); ++k) {
        const Vertex u = buckets_[cur][k];
        if (dist_[u] != cur) continue;
        const Distance nd = static_cast<Distance>(cur) + 1;
        count += adjacency(u, [&](Vertex v) {
          if (nd < dist_[v]) {
            dist_[v] = nd;
            push(v, nd);
          }
        });
      }
      buckets_[cur].clear();
    }
    if (scans != nullptr) *scans += count;
    (void)n;
    return dist_;
  }

 private:
  std::vector<Distance> dist_;
  std::vector<std::vector<Vertex>> buckets_;
};

// Additive-2 APSP. Vertices of degree >= s = ceil(sqrt n) are "heavy". A set
// D dominates every heavy vertex (random sample plus fix-up); dom(v) is the
// smallest-id neighbor of v in D. From each x in D we run a BFS in G. Then
// for each u a unit-weight search over
//   E_light = edges with a light endpoint,  E* = {(v, dom(v)) : v heavy},
// seeded with label d(u,x) at every x in D. Taking the last heavy vertex h on
// a shortest u-v path, the search finds u ~> dom(h) -> h ~> v of length at
// most d + 2. Every label is a real walk length, so the result is sound.
inline void additive2_apsp(const Graph& g, EstimateMatrix& est, std::uint64_t seed,
                           OpCounters* counters, unsigned threads) {
  const Vertex n = g.num_vertices();
  const auto s = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::uint8_t> heavy(n, 0);
  bool any_heavy = false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) >= s) heavy[v] = 1, any_heavy = true;
  }
  if (!any_heavy) {
    all_sources_bfs(g, est, counters, threads, [](Distance d) { return d; });
    return;
  }

  std::vector<std::uint8_t> in_d(n, 0);
  const double rate = std::min(1.0, 2.0 * std::log(static_cast<double>(n) + 1) / s);
  for (Vertex v = 0; v < n; ++v) {
    if (rng::bernoulli(rate, seed, rng::kDominatorStream, v)) in_d[v] = 1;
  }
  std::vector<Vertex> dom(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (!heavy[v]) continue;
    for (Vertex x : g.neighbors(v)) {
      if (in_d[x]) {
        dom[v] = x;
        break;
      }
    }
    if (dom[v] == kNoVertex) {
      dom[v] = g.neighbors(v).front();
      in_d[dom[v]] = 1;
    }
  }
  // A later fix-up can add a smaller-id neighbor to D; recompute so dom(v) is
  // always the smallest-id neighbor in the final D.
  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v) {
    if (in_d[v]) members.push_back(v);
    if (!heavy[v]) continue;
    for (Vertex x : g.neighbors(v)) {
      if (in_d[x]) {
        dom[v] = x;
        break;
      }
    }
  }
  // Dominators of each x (the reverse of E*), for undirected traversal.
  std::vector<std::vector<Vertex>> dominated(n);
  for (Vertex v = 0; v < n; ++v)
    if (heavy[v]) dominated[dom[v]].push_back(v);

  threads = std::max(1u, threads);
  CounterSlots slots(threads);
  // Exact rows from D.
  std::vector<std::vector<Distance>> d_rows(members.size());
  {
    std::vector<Bfs> engines;
    for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
    parallel_for(members.size(), threads, [&](std::size_t idx, unsigned tid) {
      engines[tid].run(g, members[idx], kInfinity, false, &slots[tid].edge_scans);
      auto dist = engines[tid].distances();
      d_rows[idx].assign(dist.begin(), dist.end());
    });
  }

  std::vector<MultiSourceUnitSssp> engines;
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  std::vector<std::vector<std::pair<Vertex, Distance>>> seeds(threads);
  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex u = static_cast<Vertex>(idx);
    auto& sd = seeds[tid];
    sd.clear();
    sd.emplace_back(u, 0);
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (d_rows[j][u] != kInfinity) sd.emplace_back(members[j], d_rows[j][u]);
    }
    auto dist = engines[tid].run(
        n, sd,
        [&](Vertex x, auto&& visit) -> std::uint64_t {
          std::uint64_t c = 0;
          for (Vertex y : g.neighbors(x)) {
            ++c;
            if (!heavy[x] || !heavy[y]) visit(y);
          }
          if (heavy[x]) visit(dom[x]);
          for (Vertex y : dominated[x]) visit(y);
          return c + 1 + dominated[x].size();
        },
        &slots[tid].edge_scans);
    Distance* row = est.mutable_row(u);
    for (Vertex t = 0; t < n; ++t)
      if (dist[t] < row[t]) row[t] = dist[t];
    slots[tid].relaxations += n;
  });
  est.symmetrize_min();
  if (counters != nullptr) *counters += slots.sum();
}

}  // namespace detail

// Initial estimate with d <= est <= 2d + 1 for every pair.
inline EstimateMatrix init_21_approx(const Graph& g, InitVariant variant, std::uint64_t seed = 0,
                                     OpCounters* counters = nullptr, unsigned threads = 1) {
  EstimateMatrix est(g.num_vertices());
  switch (variant) {
    case InitVariant::exact:
      detail::all_sources_bfs(g, est, counters, threads, [](Distance d) { return d; });
      break;
    case InitVariant::additive2:
      detail::additive2_apsp(g, est, seed, counters, threads);
      break;
    case InitVariant::adversarial:
      detail::all_sources_bfs(g, est, counters, threads,
                              [](Distance d) { return 2 * d + (d & 1u); });
      break;
  }
  return est;
}

namespace detail {

// 2-approximate APSP on the subgraph H by sampling. S is a sample at rate
// ~ ln(n)/sqrt(n) (plus vertex 0 when the draw is empty). For each u with
// H-pivot p(u) and radius r(u) = d_H(u, p(u)):
//   B(u)  = {y : d_H(u,y) <  r(u)},   B+(u) = {y : d_H(u,y) <= r(u)}.
// est(u,v) is the min of d(u,p(u)) + d(p(u),v) over both endpoints and of
// d(u,y) + d(y,v) over y in B(u) ∩ B+(v). If r(u) <= d/2 the first term is
// <= 2d; otherwise the vertex y on a shortest path at distance r(u) - 1 from u
// lies in B(u) ∩ B+(v) and the second term is exact. Every term is an
// H-walk, hence a G-walk.
inline void sampled_low_degree_apsp(const FilteredGraph& h, EstimateMatrix& est,
                                    std::uint64_t seed, OpCounters* counters, unsigned threads) {
  const Vertex n = h.num_vertices();
  const double rate =
      std::min(1.0, std::log(static_cast<double>(n) + 1) / std::sqrt(static_cast<double>(n)));
  std::vector<Vertex> sample;
  for (Vertex v = 0; v < n; ++v)
    if (rng::bernoulli(rate, seed, rng::kLowDegreeStream, v)) sample.push_back(v);
  if (sample.empty()) sample.push_back(0);

  threads = std::max(1u, threads);
  CounterSlots slots(threads);
  std::vector<Bfs> engines;
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);

  // Full H-rows from the sample; also yields each vertex's nearest sample.
  std::vector<std::vector<Distance>> rows(sample.size());
  parallel_for(sample.size(), threads, [&](std::size_t idx, unsigned tid) {
    engines[tid].run(h, sample[idx], kInfinity, false, &slots[tid].edge_scans);
    auto d = engines[tid].distances();
    rows[idx].assign(d.begin(), d.end());
  });
  std::vector<std::uint32_t> pivot_idx(n, kNoVertex);
  std::vector<Distance> radius(n, kInfinity);
  for (std::size_t j = 0; j < sample.size(); ++j) {
    for (Vertex v = 0; v < n; ++v) {
      if (rows[j][v] < radius[v]) {
        radius[v] = rows[j][v];
        pivot_idx[v] = static_cast<std::uint32_t>(j);
      }
    }
  }

  // Closed balls B+(v), stored by center, plus the inverse: for each y, the
  // list of (v, d(y,v)) with y in B+(v).
  std::vector<std::vector<std::pair<Vertex, Distance>>> closed(n);
  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex v = static_cast<Vertex>(idx);
    auto reached = engines[tid].run(h, v, radius[v], false, &slots[tid].edge_scans);
    auto& out = closed[v];
    out.reserve(reached.size());
    for (Vertex y : reached) out.emplace_back(y, engines[tid].dist(y));
  });
  std::vector<std::vector<std::pair<Vertex, Distance>>> inverse(n);
  for (Vertex v = 0; v < n; ++v)
    for (auto [y, d] : closed[v]) inverse[y].emplace_back(v, d);

  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex u = static_cast<Vertex>(idx);
    Distance* row = est.mutable_row(u);
    std::uint64_t relax = 0;
    if (pivot_idx[u] != kNoVertex) {
      const auto& prow = rows[pivot_idx[u]];
      const Distance r = radius[u];
      for (Vertex v = 0; v < n; ++v) {
        const Distance val = sat_add(r, prow[v]);
        if (val < row[v]) row[v] = val;
      }
      relax += n;
    }
    for (auto [y, duy] : closed[u]) {
      if (duy >= radius[u]) continue;  // open ball B(u) only
      for (auto [v, dyv] : inverse[y]) {
        const Distance val = duy + dyv;
        if (val < row[v]) row[v] = val;
      }
      relax += inverse[y].size();
    }
    slots[tid].relaxations += relax;
  });
  est.symmetrize_min();
  if (counters != nullptr) *counters += slots.sum();
}

}  // namespace detail

// Lowers est on pairs joined by a shortest path of low edge degree: for every
// (s,t) with d_H(s,t) = d_G(s,t), H = edges of edge degree <= tau, the result
// satisfies est <= 2d (exact with the exact_on_subgraph backend).
inline void low_degree_apsp(const Graph& g, EstimateMatrix& est, std::uint64_t tau,
                            LowDegreeBackend backend, std::uint64_t seed = 0,
                            OpCounters* counters = nullptr, unsigned threads = 1) {
  if (backend == LowDegreeBackend::none || tau == 0) return;
  const FilteredGraph h(g, tau);
  if (h.num_edges() == 0) return;
  if (backend == LowDegreeBackend::exact_on_subgraph) {
    detail::all_sources_bfs(h, est, counters, threads, [](Distance d) { return d; });
  } else {
    detail::sampled_low_degree_apsp(h, est, seed, counters, threads);
  }
}

// est(s, pivot_i(s)) and est(s, w) for w in ball_i(s) become exact.
inline void seed_pivot_distances(EstimateMatrix& est, const PivotTable& pivots,
                                 const BallTable& balls, OpCounters* counters = nullptr) {
  std::uint64_t relax = 0;
  const Vertex n = pivots.num_vertices();
  for (std::uint32_t i = 0; i < pivots.num_levels(); ++i) {
    for (Vertex s = 0; s < n; ++s) {
      if (!pivots.defined(i, s)) continue;
      est.relax(s, pivots.pivot(i, s), pivots.distance(i, s));
      ++relax;
      for (const BallEntry& e : balls.ball(i, s)) est.relax(s, e.vertex, e.dist);
      relax += balls.ball(i, s).size();
    }
  }
  if (counters != nullptr) counters->relaxations += relax;
}

}  // namespace apx

#endif  // APX_INIT_HPP_
