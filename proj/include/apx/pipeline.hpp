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

#ifndef APX_PIPELINE_HPP_
#define APX_PIPELINE_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apx/bfs.hpp"
#include "apx/closeness.hpp"
#include "apx/core.hpp"
#include "apx/estimate.hpp"
#include "apx/graph.hpp"
#include "apx/init.hpp"
#include "apx/parallel.hpp"
#include "apx/pivots.hpp"
#include "apx/sampling.hpp"
#include "json.hpp"

namespace apx {

struct RunConfig {
  // Power of two in [2, 2^L]. 0 selects the largest value, 2^L, which is the
  // "k = log n" setting: every general iteration runs and the final step is
  // skipped.
  std::uint32_t k = 0;
  std::uint64_t seed = 1;
  double c_deg = 4.0;
  double c_ball = 4.0;
  Vertex exact_fallback_cutoff = 256;
  bool force_pipeline = false;
  InitVariant init = InitVariant::additive2;
  LowDegreeBackend low_degree = LowDegreeBackend::exact_on_subgraph;
  PivotMode pivot_mode = PivotMode::fast;
  QueueKind queue = QueueKind::automatic;
  unsigned threads = 1;
  bool snapshot_phases = false;

  nlohmann::json to_json() const {
    return {{"k", k},
            {"seed", seed},
            {"c_deg", c_deg},
            {"c_ball", c_ball},
            {"exact_fallback_cutoff", exact_fallback_cutoff},
            {"force_pipeline", force_pipeline},
            {"init_variant", to_string(init)},
            {"backend_lowdeg", to_string(low_degree)},
            {"pivot_mode", pivot_mode == PivotMode::fast ? "fast" : "reference"},
            {"threads", threads},
            {"snapshot_phases", snapshot_phases}};
  }
};

// The resolved k for n: validates cfg.k and maps 0 to 2^L.
inline std::uint32_t resolve_k(std::size_t n, std::uint32_t k) {
  if (n < 2) throw InputError("run: need n >= 2");
  const std::uint32_t L = num_levels(n);
  const std::uint32_t max_k = 1u << std::min<std::uint32_t>(L, 31);
  if (k == 0) return max_k;
  if (k < 2 || k > max_k || (k & (k - 1)) != 0) {
    std::string valid;
    for (std::uint32_t v = 2; v <= max_k; v *= 2) valid += (valid.empty() ? "" : ",") + std::to_string(v);
    throw InputError("invalid k=" + std::to_string(k) + " for n=" + std::to_string(n) +
                     ": k must be a power of two in {" + valid + "}");
  }
  return k;
}

inline std::int32_t stop_level(std::uint32_t L, std::uint32_t k) {
  return std::max<std::int32_t>(-1, static_cast<std::int32_t>(L) -
                                        static_cast<std::int32_t>(floor_log2(k)) - 1);
}

// Additive slack of the final guarantee: 18 (log2 k + 1).
inline Distance additive_threshold(std::uint32_t k) { return 18 * (floor_log2(k) + 1); }

// Everything derived from (graph, seed) that the iterations read.
struct Structures {
  SampleHierarchy hierarchy;
  BaseSamples base;
  PivotTable pivots;
  BallTable balls;
  PivotInverse inverse;
  std::uint64_t fast_pivot_mismatches = 0;
};

inline Structures build_structures(const Graph& g, const RunConfig& cfg,
                                   OpCounters* counters = nullptr) {
  const Vertex n = g.num_vertices();
  Structures st;
  st.hierarchy = build_hierarchy(n, cfg.seed);
  if (n >= 4) st.base = build_base_samples(n, cfg.seed);
  const std::uint32_t L = st.hierarchy.L;
  st.pivots = PivotTable(n, L);
  for (std::uint32_t i = 0; i < L; ++i) {
    PivotLevel level = compute_pivots(g, st.hierarchy, i, cfg.pivot_mode,
                                      thresholds::level(n, i, cfg.c_deg), counters, cfg.threads);
    if (cfg.pivot_mode == PivotMode::fast) {
      // Reference tables are one BFS per level; keep the mismatch statistic.
      const PivotLevel ref = detail::multi_source_nearest(g, st.hierarchy.level(i), nullptr);
      for (Vertex s = 0; s < n; ++s)
        if (ref.pivot[s] != level.pivot[s] || ref.dist[s] != level.dist[s])
          ++st.fast_pivot_mismatches;
    }
    st.pivots.set_level(i, std::move(level));
  }
  for (std::uint32_t i = 0; i < L; ++i) {
    st.balls.levels.push_back(compute_balls(g, st.pivots, i, counters, cfg.threads));
    st.inverse.levels.push_back(invert_pivots(st.pivots, i));
  }
  return st;
}

namespace detail {

// Part 3 kernel shared by the general iteration and the final step. For each
// row x, `candidates(x, emit)` emits w; each w contributes
// est(x,w) + est(w, p) + est(p, y) with p = pivot_j(w), for every column y.
// Candidates sharing p are merged first (only the smallest est(x,w)+est(w,p)
// matters). Reads come from `snap`; row x of `est` is the only row written.
template <class Candidates>
void pivot_chain_part(std::span<const Vertex> rows, std::span<const Vertex> cols, bool all_cols,
                      std::uint32_t j, const EstimateMatrix& snap, EstimateMatrix& est,
                      const PivotTable& pivots, Candidates&& candidates, unsigned threads,
                      OpCounters* counters) {
  const Vertex n = est.size();
  threads = std::max(1u, threads);
  CounterSlots slots(threads);
  struct Scratch {
    std::vector<Distance> best;
    std::vector<Vertex> touched;
  };
  std::vector<Scratch> scratch(threads, Scratch{std::vector<Distance>(n, kInfinity), {}});
  parallel_for(rows.size(), threads, [&](std::size_t idx, unsigned tid) {
    const Vertex x = rows[idx];
    auto& sc = scratch[tid];
    auto xrow = snap.row(x);
    std::uint64_t cands = 0;
    candidates(x, [&](Vertex w) {
      ++cands;
      if (!pivots.defined(j, w)) return;
      const Vertex p = pivots.pivot(j, w);
      const Distance c = sat_add(xrow[w], snap.at(w, p));
      if (c >= sc.best[p]) return;
      if (sc.best[p] == kInfinity) sc.touched.push_back(p);
      sc.best[p] = c;
    });
    Distance* row = est.mutable_row(x);
    for (Vertex p : sc.touched) {
      const Distance c = sc.best[p];
      sc.best[p] = kInfinity;
      auto prow = snap.row(p);
      if (all_cols) {
        for (Vertex y = 0; y < n; ++y) {
          const Distance val = sat_add(c, prow[y]);
          if (val < row[y]) row[y] = val;
        }
      } else {
        for (Vertex y : cols) {
          const Distance val = sat_add(c, prow[y]);
          if (val < row[y]) row[y] = val;
        }
      }
    }
    slots[tid].relaxations += cands + sc.touched.size() * (all_cols ? n : cols.size());
    sc.touched.clear();
  });
  est.symmetrize_min();
  if (counters != nullptr) *counters += slots.sum();
}

}  // namespace detail

// Base case on the top level. For each l and w in B_l, a BFS from w in
// (edges of edge degree <= tau_base(l)) + (all edges at w) lowers row w; then
// every pair (x, y) of A_{L-1} is relaxed through w.
inline void base_case(const Graph& g, EstimateMatrix& est, const BaseSamples& base,
                      const SampleHierarchy& h, double c_deg = 4.0, unsigned threads = 1,
                      OpCounters* counters = nullptr) {
  const Vertex n = g.num_vertices();
  const auto& top = h.level(h.L - 1);
  struct Task {
    std::uint32_t l;
    Vertex w;
  };
  std::vector<Task> tasks;
  for (const auto& [l, sample] : base.samples)
    for (Vertex w : sample) tasks.push_back({l, w});
  if (tasks.empty()) return;

  std::map<std::uint32_t, FilteredGraph> filtered;
  for (const auto& [l, sample] : base.samples)
    if (!sample.empty()) filtered.emplace(l, FilteredGraph(g, thresholds::base(n, l, c_deg)));

  const EstimateMatrix snap = est;
  threads = std::max(1u, threads);
  CounterSlots slots(threads);
  std::vector<Bfs> engines;
  for (unsigned t = 0; t < threads; ++t) engines.emplace_back(n);
  std::vector<std::vector<Distance>> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t idx, unsigned tid) {
    const Task& task = tasks[idx];
    engines[tid].run(filtered.at(task.l), task.w, kInfinity, true, &slots[tid].edge_scans);
    auto d = engines[tid].distances();
    auto s = snap.row(task.w);
    auto& r = rows[idx];
    r.resize(n);
    for (Vertex v = 0; v < n; ++v) r[v] = std::min(d[v], s[v]);
  });
  OpCounters seq;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    Distance* row = est.mutable_row(tasks[t].w);
    for (Vertex v = 0; v < n; ++v) row[v] = std::min(row[v], rows[t][v]);
    seq.relaxations += n;
  }
  // Pair loop over A_{L-1} x A_{L-1}, with r_w restricted to the top level.
  const std::size_t sigma = top.size();
  std::vector<Distance> packed(tasks.size() * sigma);
  for (std::size_t t = 0; t < tasks.size(); ++t)
    for (std::size_t a = 0; a < sigma; ++a) packed[t * sigma + a] = rows[t][top[a]];
  parallel_for(sigma, threads, [&](std::size_t a, unsigned tid) {
    Distance* row = est.mutable_row(top[a]);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const Distance* r = &packed[t * sigma];
      const Distance rx = r[a];
      if (rx == kInfinity) continue;
      for (std::size_t b = 0; b < sigma; ++b) {
        const Distance val = sat_add(rx, r[b]);
        if (val < row[top[b]]) row[top[b]] = val;
      }
    }
    slots[tid].relaxations += tasks.size() * sigma;
  });
  est.symmetrize_min();
  if (counters != nullptr) {
    *counters += slots.sum();
    *counters += seq;
  }
}

// General iteration at level i (0 <= i <= L-2): two UpdateFrom passes over
// A_{i+1}, then for (x, y) in A_i x A_i and w in ball_{i+1}(x) or with
// pivot_i(w) = x, est(x,y) <- est(x,w) + est(w, pivot_{i+1}(w)) +
// est(pivot_{i+1}(w), y).
inline void general_iteration(std::uint32_t i, const Graph& g, EstimateMatrix& est,
                              const SampleHierarchy& h, const PivotTable& pivots,
                              const BallTable& balls, const PivotInverse& inverse,
                              const ClosenessConfig& cfg, OpCounters* counters = nullptr) {
  if (h.L < 2 || i > h.L - 2) {
    throw InputError("general_iteration: level " + std::to_string(i) + " out of range [0," +
                     std::to_string(h.L < 2 ? 0 : h.L - 2) + "]");
  }
  const std::uint32_t j = i + 1;
  const FilteredGraph filtered(g, cfg.tau.at(j));
  update_from_part(h.level(j), filtered, est, pivots, inverse, cfg, counters);
  update_from_part(h.level(j), filtered, est, pivots, inverse, cfg, counters);
  const EstimateMatrix snap = est;
  const auto& level = h.level(i);
  detail::pivot_chain_part(
      level, level, level.size() == est.size(), j, snap, est, pivots,
      [&](Vertex x, auto&& emit) {
        for (const BallEntry& e : balls.ball(j, x)) emit(e.vertex);
        for (Vertex w : inverse.of(i, x)) emit(w);
      },
      cfg.threads, counters);
}

// Final step at level i = i_stop: two UpdateFrom passes over A_{i+1}, then for
// every (x, y) in V x V and w in ball_{i+1}(x) ∪ {x}, the same chain relax.
inline void final_step(std::uint32_t i, const Graph& g, EstimateMatrix& est,
                       const SampleHierarchy& h, const PivotTable& pivots,
                       const BallTable& balls, const PivotInverse& inverse,
                       const ClosenessConfig& cfg, OpCounters* counters = nullptr) {
  if (h.L < 2 || i > h.L - 2) {
    throw InputError("final_step: level " + std::to_string(i) + " out of range");
  }
  const std::uint32_t j = i + 1;
  const FilteredGraph filtered(g, cfg.tau.at(j));
  update_from_part(h.level(j), filtered, est, pivots, inverse, cfg, counters);
  update_from_part(h.level(j), filtered, est, pivots, inverse, cfg, counters);
  const EstimateMatrix snap = est;
  const auto& all = h.level(0);
  detail::pivot_chain_part(
      all, all, true, j, snap, est, pivots,
      [&](Vertex x, auto&& emit) {
        for (const BallEntry& e : balls.ball(j, x)) emit(e.vertex);
        emit(x);
      },
      cfg.threads, counters);
}

struct PhaseRecord {
  std::string name;
  double seconds = 0;
  OpCounters counters;
  std::uint64_t digest = 0;
};

struct RunReport {
  Vertex n = 0;
  std::size_t m = 0;
  RunConfig config;
  std::uint32_t L = 0;
  std::uint32_t k = 0;
  std::int32_t i_stop = -1;
  bool exact_fallback = false;
  std::vector<PhaseRecord> phases;
  std::vector<std::size_t> level_sizes;
  std::vector<std::size_t> max_ball_sizes;
  std::vector<double> ball_bounds;
  std::uint64_t oversized_balls = 0;
  std::uint64_t empty_levels = 0;
  std::uint64_t fast_pivot_mismatches = 0;
  std::uint64_t digest = 0;

  OpCounters totals() const {
    OpCounters t;
    for (const auto& p : phases) t += p.counters;
    return t;
  }
  double seconds() const {
    double s = 0;
    for (const auto& p : phases) s += p.seconds;
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json phases_json = nlohmann::json::array();
    OpCounters cumulative;
    for (const auto& p : phases) {
      cumulative += p.counters;
      phases_json.push_back({{"name", p.name},
                             {"seconds", p.seconds},
                             {"relaxations", p.counters.relaxations},
                             {"edge_scans", p.counters.edge_scans},
                             {"cumulative_ops", cumulative.total()},
                             {"digest", digest_hex(p.digest)}});
    }
    const OpCounters t = totals();
    return {{"n", n},
            {"m", m},
            {"config", config.to_json()},
            {"L", L},
            {"k", k},
            {"i_stop", i_stop},
            {"exact_fallback", exact_fallback},
            {"phases", phases_json},
            {"totals", {{"relaxations", t.relaxations}, {"edge_scans", t.edge_scans},
                        {"seconds", seconds()}}},
            {"level_sizes", level_sizes},
            {"max_ball_sizes", max_ball_sizes},
            {"ball_bounds", ball_bounds},
            {"events", {{"oversized_balls", oversized_balls},
                        {"empty_levels", empty_levels},
                        {"fast_pivot_mismatches", fast_pivot_mismatches}}},
            {"matrix_bytes", static_cast<std::uint64_t>(n) * n * sizeof(Distance)},
            {"digest", digest_hex(digest)}};
  }
};

struct RunResult {
  EstimateMatrix est;
  RunReport report;
  // (phase name, matrix after the phase), when cfg.snapshot_phases is set.
  std::vector<std::pair<std::string, EstimateMatrix>> snapshots;
  Structures structures;  // empty under exact fallback
};

inline RunResult run(const Graph& g, const RunConfig& cfg) {
  const Vertex n = g.num_vertices();
  RunResult out;
  RunReport& rep = out.report;
  rep.n = n;
  rep.m = g.num_edges();
  rep.config = cfg;
  rep.k = resolve_k(n, cfg.k);
  rep.L = num_levels(n);
  rep.i_stop = stop_level(rep.L, rep.k);
  const unsigned threads = std::max(1u, cfg.threads);

  using Clock = std::chrono::steady_clock;
  auto phase = [&](const std::string& name, auto&& body) {
    PhaseRecord rec;
    rec.name = name;
    const auto t0 = Clock::now();
    body(rec.counters);
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rec.digest = out.est.digest();
    rep.phases.push_back(rec);
    if (cfg.snapshot_phases) out.snapshots.emplace_back(name, out.est);
  };

  if (n < cfg.exact_fallback_cutoff && !cfg.force_pipeline) {
    rep.exact_fallback = true;
    phase("exact_fallback", [&](OpCounters& c) {
      out.est = init_21_approx(g, InitVariant::exact, cfg.seed, &c, threads);
    });
    rep.digest = out.est.digest();
    return out;
  }

  phase("init", [&](OpCounters& c) {
    out.est = init_21_approx(g, cfg.init, cfg.seed, &c, threads);
  });
  phase("low_degree", [&](OpCounters& c) {
    low_degree_apsp(g, out.est, thresholds::low_degree(n, cfg.c_deg), cfg.low_degree, cfg.seed,
                    &c, threads);
  });
  Structures& st = out.structures;
  phase("structures", [&](OpCounters& c) { st = build_structures(g, cfg, &c); });
  phase("seed_pivots",
        [&](OpCounters& c) { seed_pivot_distances(out.est, st.pivots, st.balls, &c); });

  const SampleHierarchy& h = st.hierarchy;
  rep.fast_pivot_mismatches = st.fast_pivot_mismatches;
  for (std::uint32_t i = 0; i < h.L; ++i) {
    rep.level_sizes.push_back(h.level(i).size());
    if (h.level(i).empty()) ++rep.empty_levels;
    const std::size_t mx = st.balls.levels[i].max_size();
    const double bound = thresholds::ball_size(n, i, cfg.c_ball);
    rep.max_ball_sizes.push_back(mx);
    rep.ball_bounds.push_back(bound);
    for (Vertex s = 0; s < n; ++s)
      if (static_cast<double>(st.balls.ball(i, s).size()) > bound) ++rep.oversized_balls;
  }

  ClosenessConfig ccfg = make_closeness_config(n, h.L, cfg.c_deg, threads);
  ccfg.queue = cfg.queue;
  phase("ensure_closeness", [&](OpCounters& c) {
    ensure_closeness(g, out.est, h, st.pivots, st.inverse, ccfg, &c);
  });
  phase("base_case", [&](OpCounters& c) {
    base_case(g, out.est, st.base, h, cfg.c_deg, threads, &c);
  });
  for (std::int32_t i = static_cast<std::int32_t>(h.L) - 2; i > rep.i_stop; --i) {
    phase("general_" + std::to_string(i), [&](OpCounters& c) {
      general_iteration(static_cast<std::uint32_t>(i), g, out.est, h, st.pivots, st.balls,
                        st.inverse, ccfg, &c);
    });
  }
  if (rep.i_stop >= 0) {
    phase("final_" + std::to_string(rep.i_stop), [&](OpCounters& c) {
      final_step(static_cast<std::uint32_t>(rep.i_stop), g, out.est, h, st.pivots, st.balls,
                 st.inverse, ccfg, &c);
    });
  }
  rep.digest = out.est.digest();
  return out;
}

// JSON sidecar written next to a matrix dump.
inline nlohmann::json matrix_sidecar(const EstimateMatrix& est, const RunReport& rep) {
  return {{"format", "APXM"},
          {"version", 1},
          {"n", est.size()},
          {"entry_bytes", 4},
          {"byte_order", "little"},
          {"infinity", kInfinity},
          {"digest", digest_hex(est.digest())},
          {"report", rep.to_json()}};
}

}  // namespace apx

#endif  // APX_PIPELINE_HPP_
