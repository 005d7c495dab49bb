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

#ifndef APX_GENERATORS_HPP_
#define APX_GENERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "apx/core.hpp"
#include "apx/graph.hpp"
#include "apx/sampling.hpp"
#include "json.hpp"

namespace apx {

// Graph families. All randomness goes through the counter RNG on the
// generator stream, keyed by the pair (or item) being drawn.
struct GeneratorSpec {
  std::string family = "gnp";  // gnp|path|grid|barbell|path-with-chords|power-law
  Vertex n = 0;
  double p = 0.0;             // gnp edge probability
  Vertex rows = 0, cols = 0;  // grid; else the most square rows x cols = n
  Vertex clique = 0;          // barbell clique size, 0 = n / 4
  Vertex chords = 2;          // path-with-chords: long random chords
  double exponent = 2.5;      // power-law degree exponent
  double avg_degree = 8.0;    // power-law target mean degree
  std::uint64_t seed = 1;

  nlohmann::json to_json() const {
    return {{"family", family}, {"n", n},         {"p", p},
            {"rows", rows},     {"cols", cols},   {"clique", clique},
            {"chords", chords}, {"exponent", exponent}, {"avg_degree", avg_degree},
            {"seed", seed}};
  }
};

inline Graph gen_path(Vertex n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return from_edge_list(std::move(e), n);
}

inline Graph gen_grid(Vertex rows, Vertex cols) {
  std::vector<Edge> e;
  auto id = [cols](Vertex r, Vertex c) { return r * cols + c; };
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return from_edge_list(std::move(e), rows * cols);
}

inline Graph gen_gnp(Vertex n, double p, std::uint64_t seed) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng::bernoulli(p, seed, rng::kGeneratorStream, u, v)) e.push_back({u, v});
  return from_edge_list(std::move(e), n);
}

// Two cliques of size c on [0, c) and [n - c, n), joined by a path through
// the middle vertices.
inline Graph gen_barbell(Vertex n, Vertex clique) {
  if (clique == 0) clique = std::max<Vertex>(2, n / 4);
  if (2 * clique > n) throw InputError("barbell: 2 * clique exceeds n");
  std::vector<Edge> e;
  for (Vertex base : {Vertex{0}, n - clique})
    for (Vertex u = 0; u < clique; ++u)
      for (Vertex v = u + 1; v < clique; ++v) e.push_back({base + u, base + v});
  for (Vertex v = clique - 1; v + 1 <= n - clique; ++v) e.push_back({v, v + 1});
  return from_edge_list(std::move(e), n);
}

// A long path with hubs: every ~4 sqrt(n) positions a hub is joined to all
// path vertices within sqrt(n) of it (degree ~ 2 sqrt(n)); then `chords`
// random long chords between hubs. The diameter stays large, so many pairs
// are far apart, while the hubs supply high-degree vertices on those paths.
inline Graph gen_path_with_chords(Vertex n, Vertex chords, std::uint64_t seed) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  const auto root = static_cast<Vertex>(std::max(2.0, std::floor(std::sqrt(static_cast<double>(n)))));
  const Vertex spacing = 4 * root;
  std::vector<Vertex> hubs;
  for (Vertex h = root; h < n; h += spacing) {
    hubs.push_back(h);
    const Vertex lo = h >= root ? h - root : 0;
    const Vertex hi = std::min<Vertex>(n - 1, h + root);
    for (Vertex v = lo; v <= hi; ++v)
      if (v != h) e.push_back({h, v});
  }
  if (hubs.size() >= 2) {
    for (Vertex c = 0; c < chords; ++c) {
      const auto a = hubs[rng::hash(seed, rng::kGeneratorStream, c, 0) % hubs.size()];
      const auto b = hubs[rng::hash(seed, rng::kGeneratorStream, c, 1) % hubs.size()];
      if (a != b) e.push_back({a, b});
    }
  }
  return from_edge_list(std::move(e), n);
}

// Chung-Lu: weight w_i ~ (i + 1)^(-1/(gamma-1)) scaled to the target mean
// degree; edge (u, v) with probability min(1, w_u w_v / sum w).
inline Graph gen_power_law(Vertex n, double exponent, double avg_degree, std::uint64_t seed) {
  if (exponent <= 1.0) throw InputError("power-law: exponent must exceed 1");
  std::vector<double> w(n);
  double sum = 0;
  for (Vertex i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(i) + 1.0, -1.0 / (exponent - 1.0));
    sum += w[i];
  }
  const double scale = avg_degree * n / sum;
  for (double& x : w) x *= scale;
  const double total = avg_degree * n;
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng::bernoulli(std::min(1.0, w[u] * w[v] / total), seed, rng::kGeneratorStream, u, v))
        e.push_back({u, v});
  return from_edge_list(std::move(e), n);
}

inline Graph generate(const GeneratorSpec& spec) {
  const std::string& f = spec.family;
  if (f == "gnp") {
    if (spec.p < 0 || spec.p > 1) throw InputError("gnp: p must be in [0,1]");
    return gen_gnp(spec.n, spec.p, spec.seed);
  }
  if (f == "path") return gen_path(spec.n);
  if (f == "grid") {
    Vertex r = spec.rows, c = spec.cols;
    if (r == 0 || c == 0) {
      // Most square factorization of n, so the grid has exactly n vertices.
      if (spec.n == 0) throw InputError("grid: need n >= 1 or rows/cols");
      r = static_cast<Vertex>(std::floor(std::sqrt(static_cast<double>(spec.n))));
      while (spec.n % r != 0) --r;
      c = spec.n / r;
    }
    return gen_grid(r, c);
  }
  if (f == "barbell") return gen_barbell(spec.n, spec.clique);
  if (f == "path-with-chords") return gen_path_with_chords(spec.n, spec.chords, spec.seed);
  if (f == "power-law") return gen_power_law(spec.n, spec.exponent, spec.avg_degree, spec.seed);
  throw InputError("unknown generator family '" + f +
                   "' (gnp|path|grid|barbell|path-with-chords|power-law)");
}

}  // namespace apx

#endif  // APX_GENERATORS_HPP_
