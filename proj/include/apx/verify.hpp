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

#ifndef APX_VERIFY_HPP_
#define APX_VERIFY_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apx/bfs.hpp"
#include "apx/core.hpp"
#include "apx/estimate.hpp"
#include "apx/graph.hpp"
#include "apx/init.hpp"
#include "apx/pipeline.hpp"
#include "apx/pivots.hpp"
#include "apx/sampling.hpp"
#include "json.hpp"

namespace apx {

// Ground truth: a full BFS from every vertex, stored in the estimate layout.
using ExactDistances = EstimateMatrix;

inline ExactDistances exact_apsp(const Graph& g, unsigned threads = 1) {
  return init_21_approx(g, InitVariant::exact, 0, nullptr, threads);
}

// ---------------------------------------------------------------------------
// Guarantee checks

struct PairViolation {
  Vertex s;
  Vertex t;
  Distance d;
  Distance est;
};

struct StretchReport {
  std::uint32_t k = 0;
  Distance additive = 0;     // 18 (log2 k + 1)
  std::uint64_t pairs = 0;   // unordered pairs s < t
  std::uint64_t soundness = 0;         // (a) est < d
  std::uint64_t two_approx = 0;        // (b) d >= additive and est > 2d
  std::uint64_t combined = 0;          // (c) est > max(2d, d + additive)
  std::uint64_t init_contract = 0;     // (d) init snapshot est > 2d + 1
  bool init_checked = false;
  std::uint64_t asymmetric = 0;
  std::uint64_t exact_pairs = 0;
  std::map<Distance, std::uint64_t> gap_histogram;      // est - d, finite pairs
  std::map<std::string, std::uint64_t> stretch_histogram;
  std::vector<PairViolation> soundness_list, two_approx_list, combined_list, init_list;

  bool clean() const { return soundness == 0 && two_approx == 0; }

  nlohmann::json to_json() const {
    auto list = [](const std::vector<PairViolation>& v) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& p : v) a.push_back({{"s", p.s}, {"t", p.t}, {"d", p.d}, {"est", p.est}});
      return a;
    };
    nlohmann::json gaps = nlohmann::json::object();
    for (auto [g, c] : gap_histogram) gaps[std::to_string(g)] = c;
    return {{"k", k},
            {"additive_threshold", additive},
            {"pairs", pairs},
            {"exact_pairs", exact_pairs},
            {"soundness_violations", soundness},
            {"two_approx_violations", two_approx},
            {"additive_violations", combined},
            {"init_violations", init_checked ? nlohmann::json(init_contract) : nlohmann::json()},
            {"asymmetric_entries", asymmetric},
            {"gap_histogram", gaps},
            {"stretch_histogram", stretch_histogram},
            {"violations",
             {{"soundness", list(soundness_list)},
              {"two_approx", list(two_approx_list)},
              {"additive", list(combined_list)},
              {"init", list(init_list)}}}};
  }
};

inline std::string stretch_bucket(Distance d, Distance est) {
  if (d == 0) return "d=0";
  const double r = static_cast<double>(est) / d;
  if (r == 1.0) return "1";
  if (r <= 1.25) return "(1,1.25]";
  if (r <= 1.5) return "(1.25,1.5]";
  if (r <= 2.0) return "(1.5,2]";
  return ">2";
}

// Categories: (a) est < d; (b) d >= 18(log2 k + 1) and est > 2d;
// (c) est > max(2d, d + 18(log2 k + 1)); (d) init est > 2d + 1 (only when an
// init snapshot is supplied). Lists keep the first `max_listed` entries.
inline StretchReport check_guarantees(const EstimateMatrix& est, const ExactDistances& exact,
                                      std::uint32_t k,
                                      const EstimateMatrix* init_snapshot = nullptr,
                                      std::size_t max_listed = 20) {
  if (est.size() != exact.size()) {
    throw InputError("check_guarantees: matrix has n=" + std::to_string(est.size()) +
                     " but graph has n=" + std::to_string(exact.size()));
  }
  if (init_snapshot != nullptr && init_snapshot->size() != exact.size()) {
    throw InputError("check_guarantees: init snapshot dimension mismatch");
  }
  StretchReport r;
  r.k = k;
  r.additive = additive_threshold(k);
  r.init_checked = init_snapshot != nullptr;
  const Vertex n = est.size();
  auto push = [&](std::vector<PairViolation>& v, PairViolation p) {
    if (v.size() < max_listed) v.push_back(p);
  };
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = s + 1; t < n; ++t) {
      ++r.pairs;
      const Distance d = exact.at(s, t);
      const Distance e = est.at(s, t);
      if (e != est.at(t, s)) ++r.asymmetric;
      if (e < d) {
        ++r.soundness;
        push(r.soundness_list, {s, t, d, e});
      }
      if (est.at(t, s) < d && e >= d) {
        ++r.soundness;
        push(r.soundness_list, {t, s, d, est.at(t, s)});
      }
      if (d == kInfinity) continue;
      if (e == d) ++r.exact_pairs;
      if (e >= d && e != kInfinity) {
        ++r.gap_histogram[e - d];
        ++r.stretch_histogram[stretch_bucket(d, e)];
      } else if (e == kInfinity) {
        ++r.stretch_histogram["inf"];
      }
      const std::uint64_t two_d = 2ull * d;
      if (d >= r.additive && e > two_d) {
        ++r.two_approx;
        push(r.two_approx_list, {s, t, d, e});
      }
      const std::uint64_t bound = std::max<std::uint64_t>(two_d, std::uint64_t{d} + r.additive);
      if (e > bound) {
        ++r.combined;
        push(r.combined_list, {s, t, d, e});
      }
      if (init_snapshot != nullptr && init_snapshot->at(s, t) > two_d + 1) {
        ++r.init_contract;
        push(r.init_list, {s, t, d, init_snapshot->at(s, t)});
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Analysis witnesses

struct LevelWitness {
  Vertex a = kNoVertex, u = kNoVertex, b = kNoVertex, v = kNoVertex;
  Distance sa = kInfinity;  // |s a_i| along the path
  Distance tb = kInfinity;  // |t b_i| along the path
  Distance s_pivot = kInfinity;  // |s pivot_i(s)|
  Distance t_pivot = kInfinity;  // |t pivot_i(t)|
  bool defined() const { return a != kNoVertex && b != kNoVertex; }
};

struct AnalysisWitness {
  Vertex s = 0, t = 0;
  Distance d = 0;
  std::vector<Vertex> path;  // s = path[0], t = path.back()
  std::vector<LevelWitness> levels;

  nlohmann::json to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    auto id = [](Vertex x) { return x == kNoVertex ? nlohmann::json() : nlohmann::json(x); };
    auto dist = [](Distance x) { return x == kInfinity ? nlohmann::json() : nlohmann::json(x); };
    for (const auto& w : levels) {
      lv.push_back({{"a", id(w.a)}, {"u", id(w.u)}, {"b", id(w.b)}, {"v", id(w.v)},
                    {"sa", dist(w.sa)}, {"tb", dist(w.tb)},
                    {"s_pivot_dist", dist(w.s_pivot)}, {"t_pivot_dist", dist(w.t_pivot)}});
    }
    return {{"s", s}, {"t", t}, {"d", d}, {"path", path}, {"levels", lv}};
  }
};

// Holds exact-distance pivots for every level (smallest-id ties) and builds
// witnesses along canonical shortest paths.
class WitnessExtractor {
 public:
  WitnessExtractor(const Graph& g, const ExactDistances& exact, const SampleHierarchy& h)
      : g_(&g), exact_(&exact), pivots_(g.num_vertices(), h.L) {
    for (std::uint32_t i = 0; i < h.L; ++i)
      pivots_.set_level(i, detail::multi_source_nearest(g, h.level(i), nullptr));
  }

  const PivotTable& pivots() const { return pivots_; }

  // BFS tree from s with the smallest-id parent at every step.
  std::vector<Vertex> canonical_path(Vertex s, Vertex t) const {
    const Distance d = exact_->at(s, t);
    if (d == kInfinity) {
      throw InputError("extract_witnesses: vertices " + std::to_string(s) + " and " +
                       std::to_string(t) + " are disconnected");
    }
    std::vector<Vertex> path(d + 1);
    path[d] = t;
    Vertex cur = t;
    for (Distance k = d; k > 0; --k) {
      for (Vertex u : g_->neighbors(cur)) {  // ascending ids
        if (exact_->at(s, u) == k - 1) {
          cur = u;
          break;
        }
      }
      path[k - 1] = cur;
    }
    return path;
  }

  // Every shortest s-t path, up to `limit` of them.
  std::vector<std::vector<Vertex>> all_shortest_paths(Vertex s, Vertex t,
                                                      std::size_t limit = 4096) const {
    std::vector<std::vector<Vertex>> out;
    const Distance d = exact_->at(s, t);
    if (d == kInfinity) return out;
    std::vector<Vertex> cur{s};
    auto rec = [&](auto&& self, Vertex x) -> void {
      if (out.size() >= limit) return;
      if (x == t) {
        out.push_back(cur);
        return;
      }
      const Distance dx = static_cast<Distance>(cur.size() - 1);
      for (Vertex y : g_->neighbors(x)) {
        if (exact_->at(s, y) == dx + 1 && exact_->at(y, t) == d - dx - 1) {
          cur.push_back(y);
          self(self, y);
          cur.pop_back();
        }
      }
    };
    rec(rec, s);
    return out;
  }

  AnalysisWitness on_path(std::vector<Vertex> path) const {
    AnalysisWitness w;
    w.s = path.front();
    w.t = path.back();
    w.d = static_cast<Distance>(path.size() - 1);
    w.path = std::move(path);
    const Distance len = w.d;
    for (std::uint32_t i = 0; i < pivots_.num_levels(); ++i) {
      LevelWitness lw;
      lw.s_pivot = pivots_.distance(i, w.s);
      lw.t_pivot = pivots_.distance(i, w.t);
      for (Distance k = 0; k <= len; ++k) {
        const Vertex x = w.path[k];
        if (pivots_.defined(i, x) && pivots_.distance(i, x) <= 1) {
          lw.a = x;
          lw.u = pivots_.pivot(i, x);
          lw.sa = k;
          break;
        }
      }
      for (Distance k = 0; k <= len; ++k) {
        const Vertex x = w.path[len - k];
        if (pivots_.defined(i, x) && pivots_.distance(i, x) <= 1) {
          lw.b = x;
          lw.v = pivots_.pivot(i, x);
          lw.tb = k;
          break;
        }
      }
      w.levels.push_back(lw);
    }
    return w;
  }

  AnalysisWitness extract(Vertex s, Vertex t) const { return on_path(canonical_path(s, t)); }

 private:
  const Graph* g_;
  const ExactDistances* exact_;
  PivotTable pivots_;
};

inline AnalysisWitness extract_witnesses(const Graph& g, const ExactDistances& exact,
                                         const SampleHierarchy& h, Vertex s, Vertex t) {
  return WitnessExtractor(g, exact, h).extract(s, t);
}

// ---------------------------------------------------------------------------
// Lemma suite

struct LemmaSuiteConfig {
  std::uint32_t k = 0;  // resolved k of the run
  double c_deg = 4.0;
  double c_ball = 4.0;
  Vertex exhaustive_cutoff = 64;  // exhaustive-path retry on a miss
  std::size_t max_dumped = 10;
};

struct LemmaRate {
  std::uint64_t instances = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t via_exhaustive = 0;  // satisfied only on a non-canonical path
  nlohmann::json misses = nlohmann::json::array();

  double rate() const { return instances == 0 ? 1.0 : static_cast<double>(satisfied) / instances; }
  bool perfect() const { return satisfied == instances; }
  nlohmann::json to_json() const {
    return {{"instances", instances}, {"satisfied", satisfied}, {"rate", rate()},
            {"via_exhaustive", via_exhaustive}, {"misses", misses}};
  }
};

struct LemmaReport {
  std::map<std::string, LemmaRate> rates;
  // Precondition / sampling-event statistics, reported separately.
  std::uint64_t pairs = 0;
  std::uint64_t pairs_not_two_approx_after_closeness = 0;
  std::uint64_t base_case_candidates = 0;   // p placed in range
  std::uint64_t base_case_sampled = 0;      // ... and a neighbor of p in B_l
  std::uint64_t onpath_failures = 0;

  bool all_perfect() const {
    for (const auto& [name, r] : rates)
      if (!r.perfect()) return false;
    return true;
  }
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, r] : rates) out[name] = r.to_json();
    return {{"lemma_rates", out},
            {"pairs", pairs},
            {"pairs_above_2d_after_closeness", pairs_not_two_approx_after_closeness},
            {"base_case_candidates", base_case_candidates},
            {"base_case_sampled", base_case_sampled},
            {"onpath_failures", onpath_failures}};
  }
};

using Snapshots = std::vector<std::pair<std::string, EstimateMatrix>>;

inline const EstimateMatrix& find_snapshot(const Snapshots& snaps, const std::string& name) {
  for (const auto& [n, m] : snaps)
    if (n == name) return m;
  throw InputError("check_lemma_suite: missing snapshot '" + name + "'");
}

namespace detail {

// Max-degree vertex on the path (first one from s on ties) and its position.
inline std::pair<Vertex, Distance> max_degree_on_path(const Graph& g,
                                                      const std::vector<Vertex>& path) {
  Distance pos = 0;
  for (Distance k = 1; k < path.size(); ++k)
    if (g.degree(path[k]) > g.degree(path[pos])) pos = k;
  return {path[pos], pos};
}

// Every edge on path[lo..hi] has edge degree <= tau.
inline bool segment_low_degree(const Graph& g, const std::vector<Vertex>& path, Distance lo,
                               Distance hi, std::uint64_t tau) {
  for (Distance k = lo; k < hi; ++k)
    if (std::min(g.degree(path[k]), g.degree(path[k + 1])) > tau) return false;
  return true;
}

}  // namespace detail

// Evaluates, per (pair, level) whose preconditions hold:
//   use21        init: est(u_i, v_i) <= 2|a_i b_i| + 5
//   near         after closeness: est(s,t) <= 2d, or the closeness disjunction
//   es           ball membership of z (exact distances)
//   base_plus4   after base case: est(u, v) <= |a b| + 4 at the top level
//   mainclaim    after iteration i: est(u_i, v_i) <= |a_i b_i| + 18 (L - i)
//   final        final matrix: est(s,t) <= d + 18 (log2 k + 1)
//   ball_size    |ball_i(s)| <= c_ball 2^(2^i) log2 n
// The standing precondition for near/base/mainclaim/final is est(s,t) > 2d
// after closeness; es does not read the estimate and runs on every pair. The whp events the arguments rely on are preconditions
// too: witnesses exist, low-degree edges on the s-a_i and t-b_i segments,
// and (from the base case on) a sampled neighbor of the path's max-degree
// vertex.
inline LemmaReport check_lemma_suite(const Graph& g, const ExactDistances& exact,
                                     const Snapshots& snaps, const SampleHierarchy& h,
                                     const BaseSamples& base, const BallTable* balls,
                                     const LemmaSuiteConfig& cfg) {
  const Vertex n = g.num_vertices();
  const std::uint32_t L = h.L;
  const std::int32_t i_stop = stop_level(L, cfg.k);
  const EstimateMatrix& init = find_snapshot(snaps, "init");
  const EstimateMatrix& closeness = find_snapshot(snaps, "ensure_closeness");
  const EstimateMatrix& after_base = find_snapshot(snaps, "base_case");
  std::vector<const EstimateMatrix*> after_iter(L, nullptr);
  after_iter[L - 1] = &after_base;
  for (std::int32_t i = static_cast<std::int32_t>(L) - 2; i > i_stop; --i)
    after_iter[i] = &find_snapshot(snaps, "general_" + std::to_string(i));
  const EstimateMatrix& final_est = snaps.back().second;

  WitnessExtractor wx(g, exact, h);
  const PivotTable& piv = wx.pivots();
  std::vector<std::uint64_t> tau(L);
  for (std::uint32_t i = 0; i < L; ++i) tau[i] = thresholds::level(n, i, cfg.c_deg);
  std::vector<std::uint8_t> in_base;  // in_base[l * n + v]
  const std::uint32_t lo = n >= 4 ? base_level_lo(n) : 1;
  const std::uint32_t hi = n >= 4 ? base_level_hi(n) : 0;
  if (n >= 4) {
    in_base.assign(static_cast<std::size_t>(hi + 1) * n, 0);
    for (const auto& [l, sample] : base.samples)
      for (Vertex v : sample) in_base[static_cast<std::size_t>(l) * n + v] = 1;
  }

  LemmaReport rep;
  auto& r_use21 = rep.rates["use21"];
  auto& r_near = rep.rates["near"];
  auto& r_es = rep.rates["es"];
  auto& r_base = rep.rates["base_plus4"];
  auto& r_main = rep.rates["mainclaim"];
  auto& r_final = rep.rates["final"];
  auto& r_ball = rep.rates["ball_size"];

  auto miss = [&](LemmaRate& r, const AnalysisWitness& w, std::uint32_t level,
                  nlohmann::json extra) {
    if (r.misses.size() >= cfg.max_dumped) return;
    extra["level"] = level;
    extra["witness"] = w.to_json();
    r.misses.push_back(std::move(extra));
  };

  // Per-path predicates; each returns nullopt when preconditions fail.
  auto near_ok = [&](const AnalysisWitness& w, std::uint32_t i) -> std::optional<bool> {
    const LevelWitness& lw = w.levels[i];
    if (!lw.defined()) return std::nullopt;
    if (!detail::segment_low_degree(g, w.path, 0, lw.sa, tau[i]) ||
        !detail::segment_low_degree(g, w.path, w.d - lw.tb, w.d, tau[i]))
      return std::nullopt;
    const bool a1 = lw.sa <= lw.tb && lw.sa <= lw.s_pivot + 3;
    const bool a2 = lw.sa >= lw.tb && lw.tb <= lw.t_pivot + 3;
    return a1 || a2;
  };
  // z lies |s pivot_{i+1}(s)| - 3 from s (symmetric from t).
  auto es_ok = [&](const AnalysisWitness& w, std::uint32_t i, bool from_s) -> std::optional<bool> {
    const LevelWitness& cur = w.levels[i];
    const LevelWitness& nxt = w.levels[i + 1];
    if (!cur.defined() || !nxt.defined()) return std::nullopt;
    const Distance side_cur = from_s ? cur.sa : cur.tb;
    const Distance side_nxt = from_s ? nxt.sa : nxt.tb;
    const Distance other_nxt = from_s ? nxt.tb : nxt.sa;
    const Distance piv_nxt = from_s ? nxt.s_pivot : nxt.t_pivot;
    const bool closeness_side = side_nxt <= other_nxt && side_nxt <= piv_nxt + 3;
    if (!closeness_side) return std::nullopt;
    if (side_nxt < side_cur + 6) return std::nullopt;
    if (piv_nxt < 3 || piv_nxt > w.d) return std::nullopt;
    const Distance zpos = piv_nxt - 3;
    const Vertex z = from_s ? w.path[zpos] : w.path[w.d - zpos];
    const Vertex u = from_s ? cur.u : cur.v;
    if (!piv.defined(i + 1, u)) return std::nullopt;
    return exact.at(u, z) < piv.distance(i + 1, u);
  };
  // Base-case sampling event on this path.
  auto base_event = [&](const AnalysisWitness& w, bool* candidate) -> bool {
    *candidate = false;
    if (n < 4) return false;
    const LevelWitness& top = w.levels[L - 1];
    if (!top.defined()) return false;
    auto [p, pos] = detail::max_degree_on_path(g, w.path);
    if (pos < top.sa || pos > w.d - top.tb) return false;
    const std::uint32_t l = floor_log2(std::max<std::uint32_t>(1, g.degree(p)));
    if (l < lo || l > hi) return false;
    *candidate = true;
    for (Vertex x : g.neighbors(p))
      if (in_base[static_cast<std::size_t>(l) * n + x]) return true;
    return false;
  };
  auto onpath_from = [&](const AnalysisWitness& w, std::uint32_t from) {
    for (std::uint32_t j = from; j < L; ++j) {
      const LevelWitness& lw = w.levels[j];
      if (!lw.defined()) return false;
      if (!detail::segment_low_degree(g, w.path, 0, lw.sa, tau[j]) ||
          !detail::segment_low_degree(g, w.path, w.d - lw.tb, w.d, tau[j]))
        return false;
    }
    return true;
  };
  auto base_ok = [&](const AnalysisWitness& w) -> std::optional<bool> {
    bool cand = false;
    if (!base_event(w, &cand)) return std::nullopt;
    const LevelWitness& top = w.levels[L - 1];
    return after_base.at(top.u, top.v) <= exact.at(top.a, top.b) + 4;
  };
  auto main_ok = [&](const AnalysisWitness& w, std::uint32_t i) -> std::optional<bool> {
    bool cand = false;
    if (!base_event(w, &cand) || !onpath_from(w, i)) return std::nullopt;
    const LevelWitness& lw = w.levels[i];
    return after_iter[i]->at(lw.u, lw.v) <= exact.at(lw.a, lw.b) + 18 * (L - i);
  };
  auto final_ok = [&](const AnalysisWitness& w) -> std::optional<bool> {
    bool cand = false;
    const std::uint32_t from = static_cast<std::uint32_t>(i_stop + 1);
    if (!base_event(w, &cand) || !onpath_from(w, from)) return std::nullopt;
    return final_est.at(w.s, w.t) <= w.d + additive_threshold(cfg.k);
  };

  // Records one (pair, level) instance: canonical path first, exhaustive
  // retry on a miss at small n.
  auto record = [&](LemmaRate& r, const AnalysisWitness& canon, std::uint32_t level,
                    auto&& pred, const std::vector<AnalysisWitness>* all_paths) {
    const std::optional<bool> res = pred(canon);
    if (!res.has_value()) return;
    ++r.instances;
    if (*res) {
      ++r.satisfied;
      return;
    }
    if (all_paths != nullptr) {
      for (const auto& alt : *all_paths) {
        const std::optional<bool> x = pred(alt);
        if (x.has_value() && *x) {
          ++r.satisfied;
          ++r.via_exhaustive;
          return;
        }
      }
    }
    miss(r, canon, level, {});
  };

  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = s + 1; t < n; ++t) {
      const Distance d = exact.at(s, t);
      if (d == kInfinity) continue;
      ++rep.pairs;
      const AnalysisWitness w = wx.extract(s, t);
      for (std::uint32_t i = 0; i < L; ++i) {
        const LevelWitness& lw = w.levels[i];
        if (!lw.defined()) continue;
        ++r_use21.instances;
        if (init.at(lw.u, lw.v) <= 2 * exact.at(lw.a, lw.b) + 5) {
          ++r_use21.satisfied;
        } else {
          miss(r_use21, w, i, {{"est", init.at(lw.u, lw.v)}});
        }
      }
      std::vector<AnalysisWitness> alts;
      const std::vector<AnalysisWitness>* alt_ptr = nullptr;
      auto lazy_alts = [&]() {
        if (alt_ptr == nullptr && n <= cfg.exhaustive_cutoff) {
          for (auto& p : wx.all_shortest_paths(s, t)) alts.push_back(wx.on_path(std::move(p)));
          alt_ptr = &alts;
        }
        return alt_ptr;
      };
      auto record_lazy = [&](LemmaRate& r, std::uint32_t level, auto&& pred) {
        const std::optional<bool> res = pred(w);
        if (res.has_value() && !*res) {
          record(r, w, level, pred, lazy_alts());
        } else {
          record(r, w, level, pred, nullptr);
        }
      };

      // Ball membership is structural: checked on every pair.
      for (std::uint32_t i = 0; i + 1 < L; ++i) {
        record_lazy(r_es, i, [&](const AnalysisWitness& x) { return es_ok(x, i, true); });
        record_lazy(r_es, i, [&](const AnalysisWitness& x) { return es_ok(x, i, false); });
      }
      if (closeness.at(s, t) <= 2ull * d) continue;
      ++rep.pairs_not_two_approx_after_closeness;

      for (std::uint32_t i = 0; i < L; ++i)
        record_lazy(r_near, i, [&](const AnalysisWitness& x) { return near_ok(x, i); });
      bool cand = false;
      const bool event = base_event(w, &cand);
      rep.base_case_candidates += cand;
      rep.base_case_sampled += event;
      if (!onpath_from(w, 0) && w.levels[L - 1].defined()) ++rep.onpath_failures;
      record_lazy(r_base, L - 1, base_ok);
      for (std::int32_t i = static_cast<std::int32_t>(L) - 1; i > i_stop; --i) {
        const auto li = static_cast<std::uint32_t>(i);
        record_lazy(r_main, li, [&](const AnalysisWitness& x) { return main_ok(x, li); });
      }
      record_lazy(r_final, 0, final_ok);
    }
  }

  if (balls != nullptr) {
    for (std::uint32_t i = 0; i < L && i < balls->levels.size(); ++i) {
      const double bound = thresholds::ball_size(n, i, cfg.c_ball);
      for (Vertex s = 0; s < n; ++s) {
        ++r_ball.instances;
        const std::size_t size = balls->ball(i, s).size();
        if (static_cast<double>(size) <= bound) {
          ++r_ball.satisfied;
        } else if (r_ball.misses.size() < cfg.max_dumped) {
          r_ball.misses.push_back({{"level", i}, {"s", s}, {"size", size}, {"bound", bound}});
        }
      }
    }
  }
  return rep;
}

// Convenience wrapper over a pipeline result run with snapshot_phases.
inline LemmaReport check_lemma_suite(const Graph& g, const ExactDistances& exact,
                                     const RunResult& result, Vertex exhaustive_cutoff = 64) {
  if (result.report.exact_fallback) {
    throw InputError("check_lemma_suite: run used the exact fallback; force the pipeline");
  }
  LemmaSuiteConfig cfg;
  cfg.k = result.report.k;
  cfg.c_deg = result.report.config.c_deg;
  cfg.c_ball = result.report.config.c_ball;
  cfg.exhaustive_cutoff = exhaustive_cutoff;
  return check_lemma_suite(g, exact, result.snapshots, result.structures.hierarchy,
                           result.structures.base, &result.structures.balls, cfg);
}

inline nlohmann::json verify_report(const StretchReport& stretch,
                                    const std::optional<LemmaReport>& lemmas = std::nullopt) {
  nlohmann::json j = stretch.to_json();
  j["lemma_rates"] = lemmas ? lemmas->to_json()["lemma_rates"] : nlohmann::json::object();
  if (lemmas) j["lemma_events"] = lemmas->to_json();
  j["ok"] = stretch.clean();
  return j;
}

}  // namespace apx

#endif  // APX_VERIFY_HPP_
