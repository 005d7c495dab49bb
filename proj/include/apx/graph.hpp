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

#ifndef APX_GRAPH_HPP_
#define APX_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "apx/core.hpp"

namespace apx {

using Edge = std::pair<Vertex, Vertex>;

// Immutable undirected unweighted graph in CSR form. Neighbor lists are
// sorted ascending; no self-loops, no parallel edges.
class Graph {
 public:
  Graph() = default;

  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  std::uint32_t max_degree() const {
    std::uint32_t m = 0;
    for (Vertex v = 0; v < n_; ++v) m = std::max(m, degree(v));
    return m;
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::span<const std::size_t> offsets() const { return offsets_; }

 private:
  friend struct GraphBuilder;
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

struct EdgeListStats {
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

struct GraphBuilder {
  static Graph build(Vertex n, std::vector<Edge> edges, EdgeListStats* stats) {
    EdgeListStats local;
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range for n=" + std::to_string(n));
      }
      if (u == v) {
        ++local.self_loops_dropped;
        continue;
      }
      canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    auto last = std::unique(canon.begin(), canon.end());
    local.duplicates_dropped = static_cast<std::size_t>(canon.end() - last);
    canon.erase(last, canon.end());

    Graph g;
    g.n_ = n;
    std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : canon) {
      ++deg[u];
      ++deg[v];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // canon is sorted by (u, v), so both directions land in ascending order.
    for (auto [u, v] : canon) g.neighbors_[fill[u]++] = v;
    for (auto [u, v] : canon) g.neighbors_[fill[v]++] = u;
    for (Vertex v = 0; v < n; ++v) {
      auto b = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto e = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(b, e);
    }
    if (stats != nullptr) *stats = local;
    return g;
  }
};

// Canonicalizes an edge list. Self-loops and duplicates (in either
// orientation) are dropped and counted in `stats`.
inline Graph from_edge_list(std::vector<Edge> edges, Vertex n,
                            EdgeListStats* stats = nullptr) {
  return GraphBuilder::build(n, std::move(edges), stats);
}

// min(deg(u), deg(v)) for an existing edge.
inline std::uint32_t edge_degree(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v)) {
    throw ContractError("edge_degree: (" + std::to_string(u) + "," +
                        std::to_string(v) + ") is not an edge");
  }
  return std::min(g.degree(u), g.degree(v));
}

// Subgraph holding exactly the edges of edge degree <= threshold, over the
// full vertex range of the base graph. The base graph must outlive the view.
class FilteredGraph {
 public:
  FilteredGraph() = default;
  FilteredGraph(const Graph& g, std::uint64_t threshold)
      : base_(&g), threshold_(threshold) {
    const Vertex n = g.num_vertices();
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    neighbors_.reserve(2 * g.num_edges());
    for (Vertex u = 0; u < n; ++u) {
      const std::uint32_t du = g.degree(u);
      for (Vertex v : g.neighbors(u)) {
        if (std::min<std::uint64_t>(du, g.degree(v)) <= threshold) neighbors_.push_back(v);
      }
      offsets_[u + 1] = neighbors_.size();
    }
  }

  const Graph& base() const { return *base_; }
  std::uint64_t threshold() const { return threshold_; }
  Vertex num_vertices() const { return base_->num_vertices(); }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

 private:
  const Graph* base_ = nullptr;
  std::uint64_t threshold_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

inline FilteredGraph degree_filtered_view(const Graph& g, std::uint64_t threshold) {
  return FilteredGraph(g, threshold);
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" on the first line, then m lines "u v".

inline Graph read_edge_list(std::istream& in, EdgeListStats* stats = nullptr) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw InputError("edge list: expected header \"n m\"");
  }
  if (n > static_cast<long long>(kNoVertex) - 1) throw InputError("edge list: n too large");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) {
      throw InputError("edge list: expected " + std::to_string(m) + " edges, got " +
                       std::to_string(i));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge list: vertex out of range on edge " + std::to_string(i));
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return from_edge_list(std::move(edges), static_cast<Vertex>(n), stats);
}

inline Graph read_edge_list_file(const std::string& path, EdgeListStats* stats = nullptr) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_edge_list(in, stats);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write graph file: " + path);
  write_edge_list(out, g);
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace apx

#endif  // APX_GRAPH_HPP_
