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

#ifndef APX_OVERLAY_HPP_
#define APX_OVERLAY_HPP_

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "apx/core.hpp"
#include "apx/graph.hpp"
#include "apx/pivots.hpp"

namespace apx {

// Weighted graph H_w assembled on the fly from three edge sources:
//  - unit edges of a degree-filtered subgraph,
//  - star edges [hub, x] of weight star[x] (kInfinity = absent),
//  - pivot edges [x, pivot_j(x)] of weight d(x, pivot_j(x)) for every level j.
// Nothing is materialized; the star row is typically a row of the estimate
// matrix and the pivot edges come straight from the pivot tables.
struct OverlayGraph {
  const FilteredGraph* base = nullptr;
  Vertex hub = kNoVertex;
  std::span<const Distance> star;
  const PivotTable* pivots = nullptr;
  const PivotInverse* inverse = nullptr;  // must be the inverse of *pivots

  Vertex num_vertices() const { return base->num_vertices(); }

  // Calls f(neighbor, weight) for every overlay edge at u. Returns the number
  // of edges examined.
  template <class F>
  std::uint64_t for_each_edge(Vertex u, F&& f) const {
    std::uint64_t scans = 0;
    for (Vertex v : base->neighbors(u)) f(v, Distance{1});
    scans += base->neighbors(u).size();
    if (hub != kNoVertex) {
      if (u == hub) {
        const Vertex n = static_cast<Vertex>(star.size());
        for (Vertex x = 0; x < n; ++x) {
          if (star[x] != kInfinity && x != hub) f(x, star[x]);
        }
        scans += star.size();
      } else if (star[u] != kInfinity) {
        f(hub, star[u]);
        ++scans;
      }
    }
    if (pivots != nullptr) {
      const std::uint32_t L = pivots->num_levels();
      for (std::uint32_t j = 0; j < L; ++j) {
        const Vertex p = pivots->pivot(j, u);
        if (p != kNoVertex && p != u) f(p, pivots->distance(j, u));
        ++scans;
        if (inverse != nullptr) {
          for (Vertex y : inverse->of(j, u)) {
            if (y != u) f(y, pivots->distance(j, y));
          }
          scans += inverse->of(j, u).size();
        }
      }
    }
    return scans;
  }

  Distance max_weight() const {
    Distance m = 1;
    for (Distance w : star)
      if (w != kInfinity) m = std::max(m, w);
    if (pivots != nullptr) {
      for (std::uint32_t j = 0; j < pivots->num_levels(); ++j)
        for (Distance d : pivots->level(j).dist)
          if (d != kInfinity) m = std::max(m, d);
    }
    return m;
  }
};

enum class QueueKind { automatic, binary_heap, bucket };

// Single-source shortest paths on an overlay. Scratch buffers live in the
// object and are reused across runs; one instance per worker thread.
class Dijkstra {
 public:
  explicit Dijkstra(Vertex n)
      : dist_(n, kInfinity), settled_(n, 0), heap_pos_(n, kNotInHeap) {}

  std::span<const Distance> run(const OverlayGraph& h, Vertex source,
                                QueueKind kind = QueueKind::automatic,
                                std::uint64_t* edge_scans = nullptr) {
    const Vertex n = h.num_vertices();
    if (source >= n) throw InputError("dijkstra_sssp: source out of range");
    if (kind == QueueKind::automatic) {
      kind = h.max_weight() <= 8 * static_cast<Distance>(n) + 8 ? QueueKind::bucket
                                                                : QueueKind::binary_heap;
    }
    std::fill(dist_.begin(), dist_.end(), kInfinity);
    std::fill(settled_.begin(), settled_.end(), 0);
    std::uint64_t scans = 0;
    if (kind == QueueKind::bucket) {
      scans = run_buckets(h, source);
    } else {
      scans = run_heap(h, source);
    }
    if (edge_scans != nullptr) *edge_scans += scans;
    return dist_;
  }

 private:
  static constexpr std::uint32_t kNotInHeap = std::numeric_limits<std::uint32_t>::max();

  // Dial's algorithm: one bucket per tentative distance, lazy deletion.
  std::uint64_t run_buckets(const OverlayGraph& h, Vertex source) {
    std::uint64_t scans = 0;
    for (auto& b : buckets_) b.clear();
    auto push = [&](Vertex v, Distance d) {
      if (d >= buckets_.size()) buckets_.resize(static_cast<std::size_t>(d) + 1);
      buckets_[d].push_back(v);
    };
    dist_[source] = 0;
    push(source, 0);
    for (std::size_t cur = 0; cur < buckets_.size(); ++cur) {
      // buckets_ may grow (and reallocate) while we drain bucket `cur`.
      for (std::size_t k = 0; k < buckets_[cur].size(); ++k) {
        const Vertex u = buckets_[cur][k];
        if (settled_[u] || dist_[u] != cur) continue;
        settled_[u] = 1;
        const Distance du = dist_[u];
        scans += h.for_each_edge(u, [&](Vertex v, Distance w) {
          const Distance nd = sat_add(du, w);
          if (nd < dist_[v]) {
            dist_[v] = nd;
            push(v, nd);
          }
        });
      }
      buckets_[cur].clear();
    }
    return scans;
  }

  std::uint64_t run_heap(const OverlayGraph& h, Vertex source) {
    std::uint64_t scans = 0;
    heap_.clear();
    dist_[source] = 0;
    heap_push(source);
    while (!heap_.empty()) {
      const Vertex u = heap_pop();
      settled_[u] = 1;
      const Distance du = dist_[u];
      scans += h.for_each_edge(u, [&](Vertex v, Distance w) {
        if (settled_[v]) return;
        const Distance nd = sat_add(du, w);
        if (nd < dist_[v]) {
          dist_[v] = nd;
          if (heap_pos_[v] == kNotInHeap) {
            heap_push(v);
          } else {
            sift_up(heap_pos_[v]);
          }
        }
      });
    }
    return scans;
  }

  bool less(Vertex a, Vertex b) const {
    return dist_[a] != dist_[b] ? dist_[a] < dist_[b] : a < b;
  }
  void place(std::size_t i, Vertex v) {
    heap_[i] = v;
    heap_pos_[v] = static_cast<std::uint32_t>(i);
  }
  void sift_up(std::size_t i) {
    const Vertex v = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(v, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, v);
  }
  void sift_down(std::size_t i) {
    const Vertex v = heap_[i];
    const std::size_t size = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= size) break;
      if (child + 1 < size && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], v)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, v);
  }
  void heap_push(Vertex v) {
    heap_.push_back(v);
    sift_up(heap_.size() - 1);
  }
  Vertex heap_pop() {
    const Vertex top = heap_.front();
    heap_pos_[top] = kNotInHeap;
    const Vertex last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      place(0, last);
      sift_down(0);
    }
    return top;
  }

  std::vector<Distance> dist_;
  std::vector<std::uint8_t> settled_;
  std::vector<std::uint32_t> heap_pos_;
  std::vector<Vertex> heap_;
  std::vector<std::vector<Vertex>> buckets_;
};

inline std::vector<Distance> dijkstra_sssp(const OverlayGraph& h, Vertex source,
                                           QueueKind kind = QueueKind::automatic) {
  Dijkstra engine(h.num_vertices());
  auto d = engine.run(h, source, kind);
  return {d.begin(), d.end()};
}

}  // namespace apx

#endif  // APX_OVERLAY_HPP_
