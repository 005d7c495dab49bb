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

#ifndef APX_PIVOTS_HPP_
#define APX_PIVOTS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "apx/bfs.hpp"
#include "apx/core.hpp"
#include "apx/graph.hpp"
#include "apx/parallel.hpp"
#include "apx/sampling.hpp"

namespace apx {

// Degree thresholds. Every hidden polylog factor is c_deg * ceil(log2 n).
namespace thresholds {

inline std::uint64_t clamp_threshold(double x) {
  constexpr double kMax = 4.0e18;
  if (!(x < kMax)) return static_cast<std::uint64_t>(kMax);
  return x <= 0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

// tau_i = c_deg * 2^(2^i) * ceil(log2 n): edges kept at level i.
inline std::uint64_t level(std::size_t n, std::uint32_t i, double c_deg) {
  return clamp_threshold(c_deg * static_cast<double>(level_size_factor(i)) * ceil_log2(n));
}

// c_deg * ceil(sqrt n) * ceil(log2 n): the low-degree subgraph.
inline std::uint64_t low_degree(std::size_t n, double c_deg) {
  const double root = std::ceil(std::sqrt(static_cast<double>(n)));
  return clamp_threshold(c_deg * root * ceil_log2(n));
}

// c_deg * 2^(l+1) * ceil(log2 n): the base-case graph for sample B_l.
inline std::uint64_t base(std::size_t n, std::uint32_t l, double c_deg) {
  return clamp_threshold(c_deg * std::ldexp(1.0, static_cast<int>(l) + 1) * ceil_log2(n));
}

// Upper bound on |ball_i(s)| that holds with high probability.
inline double ball_size(std::size_t n, std::uint32_t i, double c_ball) {
  return c_ball * static_cast<double>(level_size_factor(i)) * log2_of(n);
}

}  // namespace thresholds

enum class PivotMode { fast, reference };

// One level of the pivot table: nearest A_i vertex per s, ties by id.
struct PivotLevel {
  std::vector<Vertex> pivot;  // kNoVertex when A_i is unreachable
  std::vector<Distance> dist;
};

class PivotTable {
 public:
  PivotTable() = default;
  PivotTable(Vertex n, std::uint32_t L) : n_(n), levels_(L) {}

  Vertex num_vertices() const { return n_; }
  std::uint32_t num_levels() const { return static_cast<std::uint32_t>(levels_.size()); }

  void set_level(std::uint32_t i, PivotLevel level) { levels_.at(i) = std::move(level); }
  const PivotLevel& level(std::uint32_t i) const { return levels_[i]; }

  Vertex pivot(std::uint32_t i, Vertex s) const { return levels_[i].pivot[s]; }
  Distance distance(std::uint32_t i, Vertex s) const { return levels_[i].dist[s]; }
  bool defined(std::uint32_t i, Vertex s) const { return levels_[i].pivot[s] != kNoVertex; }

 private:
  Vertex n_ = 0;
  std::vector<PivotLevel> levels_;
};

struct BallEntry {
  Vertex vertex;
  Distance dist;
  friend bool operator==(const BallEntry&, const BallEntry&) = default;
};

// ball_i(s) = {v : d(s, v) < d(s, pivot_i(s))}, with exact distances, sorted
// by (dist, vertex). Empty when the pivot is undefined.
struct BallLevel {
  std::vector<std::size_t> offsets{0};
  std::vector<BallEntry> entries;

  std::span<const BallEntry> ball(Vertex s) const {
    return {entries.data() + offsets[s], entries.data() + offsets[s + 1]};
  }
  std::size_t max_size() const {
    std::size_t m = 0;
    for (std::size_t s = 0; s + 1 < offsets.size(); ++s) m = std::max(m, offsets[s + 1] - offsets[s]);
    return m;
  }
};

struct BallTable {
  std::vector<BallLevel> levels;
  std::span<const BallEntry> ball(std::uint32_t i, Vertex s) const { return levels[i].ball(s); }
};

// For level i and x in A_i: every w with pivot_i(w) = x, ascending.
struct InverseLevel {
  std::vector<std::size_t> offsets{0};
  std::vector<Vertex> members;

  std::span<const Vertex> of(Vertex x) const {
    return {members.data() + offsets[x], members.data() + offsets[x + 1]};
  }
};

struct PivotInverse {
  std::vector<InverseLevel> levels;
  std::span<const Vertex> of(std::uint32_t i, Vertex x) const { return levels[i].of(x); }
};

namespace detail {

// Nearest member of `sources` with smallest-id tie-break, by layered BFS:
// a vertex first reached in layer d+1 inherits the smallest pivot among its
// layer-d neighbors.
inline PivotLevel multi_source_nearest(const Graph& g, std::span<const Vertex> sources,
                                       OpCounters* counters) {
  const Vertex n = g.num_vertices();
  PivotLevel out{std::vector<Vertex>(n, kNoVertex), std::vector<Distance>(n, kInfinity)};
  std::vector<Vertex> frontier(sources.begin(), sources.end());
  for (Vertex s : frontier) {
    out.pivot[s] = s;
    out.dist[s] = 0;
  }
  std::vector<Vertex> next;
  std::uint64_t scans = 0;
  Distance d = 0;
  while (!frontier.empty()) {
    next.clear();
    for (Vertex u : frontier) {
      auto nb = g.neighbors(u);
      scans += nb.size();
      for (Vertex v : nb) {
        if (out.dist[v] == kInfinity) {
          out.dist[v] = d + 1;
          out.pivot[v] = out.pivot[u];
          next.push_back(v);
        } else if (out.dist[v] == d + 1 && out.pivot[u] < out.pivot[v]) {
          out.pivot[v] = out.pivot[u];
        }
      }
    }
    frontier.swap(next);
    ++d;
  }
  if (counters != nullptr) counters->edge_scans += scans;
  return out;
}

}  // namespace detail

// Level-i pivots. Reference mode is an exact multi-source BFS over G. Fast
// mode runs, for each w in A_i, a BFS in H_w = (edges of edge degree <=
// threshold) + (all edges at w), and every s keeps the best (dist, w). Fast
// mode equals reference whenever each ball_i(s) has at most `threshold`
// vertices.
inline PivotLevel compute_pivots(const Graph& g, const SampleHierarchy& h, std::uint32_t i,
                                 PivotMode mode, std::uint64_t threshold,
                                 OpCounters* counters = nullptr, unsigned threads = 1) {
  if (i >= h.L) {
    throw InputError("compute_pivots: level " + std::to_string(i) + " out of range [0," +
                     std::to_string(h.L) + ")");
  }
  const Vertex n = g.num_vertices();
  const auto& members = h.level(i);
  if (mode == PivotMode::reference || members.size() == n) {
    return detail::multi_source_nearest(g, members, counters);
  }

  const FilteredGraph filtered(g, threshold);
  threads = std::max(1u, threads);
  struct Best {
    std::vector<Distance> dist;
    std::vector<Vertex> pivot;
  };
  std::vector<Best> best(threads, Best{std::vector<Distance>(n, kInfinity),
                                       std::vector<Vertex>(n, kNoVertex)});
  std::vector<Bfs> engines;
  engines.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  CounterSlots slots(threads);

  parallel_for(
      members.size(), threads,
      [&](std::size_t idx, unsigned tid) {
        const Vertex w = members[idx];
        auto reached = engines[tid].run(filtered, w, kInfinity, true, &slots[tid].edge_scans);
        auto& b = best[tid];
        for (Vertex s : reached) {
          const Distance d = engines[tid].dist(s);
          if (d < b.dist[s] || (d == b.dist[s] && w < b.pivot[s])) {
            b.dist[s] = d;
            b.pivot[s] = w;
          }
        }
      },
      4);

  PivotLevel out{std::move(best[0].pivot), std::move(best[0].dist)};
  for (unsigned t = 1; t < threads; ++t) {
    for (Vertex s = 0; s < n; ++s) {
      const Distance d = best[t].dist[s];
      const Vertex w = best[t].pivot[s];
      if (d < out.dist[s] || (d == out.dist[s] && w < out.pivot[s])) {
        out.dist[s] = d;
        out.pivot[s] = w;
      }
    }
  }
  if (counters != nullptr) *counters += slots.sum();
  return out;
}

// Capped BFS from each s: records distance <= D-1 and expands only distance
// <= D-2, where D = d(s, pivot_i(s)).
inline BallLevel compute_balls(const Graph& g, const PivotTable& pivots, std::uint32_t i,
                               OpCounters* counters = nullptr, unsigned threads = 1) {
  const Vertex n = g.num_vertices();
  std::vector<std::vector<BallEntry>> per(n);
  threads = std::max(1u, threads);
  std::vector<Bfs> engines;
  engines.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  CounterSlots slots(threads);
  parallel_for(n, threads, [&](std::size_t idx, unsigned tid) {
    const Vertex s = static_cast<Vertex>(idx);
    if (!pivots.defined(i, s)) return;
    const Distance d = pivots.distance(i, s);
    if (d == 0) return;
    auto reached = engines[tid].run(g, s, d - 1, false, &slots[tid].edge_scans);
    auto& out = per[s];
    out.reserve(reached.size());
    for (Vertex v : reached) out.push_back({v, engines[tid].dist(v)});
    std::sort(out.begin(), out.end(), [](const BallEntry& a, const BallEntry& b) {
      return a.dist != b.dist ? a.dist < b.dist : a.vertex < b.vertex;
    });
  });
  BallLevel level;
  level.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex s = 0; s < n; ++s) level.offsets[s + 1] = level.offsets[s] + per[s].size();
  level.entries.reserve(level.offsets[n]);
  for (auto& v : per) level.entries.insert(level.entries.end(), v.begin(), v.end());
  if (counters != nullptr) *counters += slots.sum();
  return level;
}

inline InverseLevel invert_pivots(const PivotTable& pivots, std::uint32_t i) {
  const Vertex n = pivots.num_vertices();
  InverseLevel inv;
  inv.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex w = 0; w < n; ++w) {
    if (pivots.defined(i, w)) ++inv.offsets[pivots.pivot(i, w) + 1];
  }
  for (Vertex x = 0; x < n; ++x) inv.offsets[x + 1] += inv.offsets[x];
  inv.members.resize(inv.offsets[n]);
  std::vector<std::size_t> fill(inv.offsets.begin(), inv.offsets.end() - 1);
  for (Vertex w = 0; w < n; ++w) {
    if (pivots.defined(i, w)) inv.members[fill[pivots.pivot(i, w)]++] = w;
  }
  return inv;
}

}  // namespace apx

#endif  // APX_PIVOTS_HPP_
