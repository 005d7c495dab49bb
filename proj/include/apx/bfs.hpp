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

#ifndef APX_BFS_HPP_
#define APX_BFS_HPP_

#include <span>
#include <vector>

#include "apx/core.hpp"
#include "apx/graph.hpp"

namespace apx {

inline std::span<const Vertex> full_neighbors(const Graph& g, Vertex v) {
  return g.neighbors(v);
}
inline std::span<const Vertex> full_neighbors(const FilteredGraph& h, Vertex v) {
  return h.base().neighbors(v);
}

// Reusable BFS state. A run only touches the vertices it reaches, and the
// next run resets exactly those, so per-source cost is proportional to the
// explored region rather than n.
class Bfs {
 public:
  explicit Bfs(Vertex n) : dist_(n, kInfinity) { order_.reserve(n); }

  // Vertices at distance <= cap are recorded; only those at distance < cap
  // are expanded. With source_full_adjacency the source expands over its
  // complete neighbor list in the base graph (the "all edges adjacent to w"
  // overlay used by pivot search and the base case).
  template <class View>
  std::span<const Vertex> run(const View& view, Vertex source, Distance cap = kInfinity,
                              bool source_full_adjacency = false,
                              std::uint64_t* edge_scans = nullptr) {
    reset();
    dist_[source] = 0;
    order_.push_back(source);
    std::uint64_t scans = 0;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Vertex u = order_[head];
      const Distance du = dist_[u];
      if (du >= cap) continue;
      auto nb = (source_full_adjacency && u == source) ? full_neighbors(view, u)
                                                       : view.neighbors(u);
      scans += nb.size();
      for (Vertex v : nb) {
        if (dist_[v] == kInfinity) {
          dist_[v] = du + 1;
          order_.push_back(v);
        }
      }
    }
    if (edge_scans != nullptr) *edge_scans += scans;
    return order_;
  }

  Distance dist(Vertex v) const { return dist_[v]; }
  std::span<const Distance> distances() const { return dist_; }
  // Reached vertices in non-decreasing distance order.
  std::span<const Vertex> order() const { return order_; }

 private:
  void reset() {
    for (Vertex v : order_) dist_[v] = kInfinity;
    order_.clear();
  }

  std::vector<Distance> dist_;
  std::vector<Vertex> order_;
};

template <class View>
std::vector<Distance> bfs_sssp(const View& view, Vertex source, Distance cap = kInfinity) {
  if (source >= view.num_vertices()) throw InputError("bfs_sssp: source out of range");
  Bfs bfs(view.num_vertices());
  bfs.run(view, source, cap);
  auto d = bfs.distances();
  return {d.begin(), d.end()};
}

}  // namespace apx

#endif  // APX_BFS_HPP_
