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

#include <sstream>

#include "apx/apx.hpp"

namespace apx {
namespace {

TEST(Pipeline, ResolveK) {
  EXPECT_EQ(resolve_k(1024, 0), 8u);
  EXPECT_EQ(resolve_k(1024, 2), 2u);
  EXPECT_EQ(resolve_k(64, 0), 4u);
  EXPECT_THROW(resolve_k(1024, 3), InputError);
  EXPECT_THROW(resolve_k(1024, 16), InputError);
  EXPECT_THROW(resolve_k(1024, 1), InputError);
  try {
    resolve_k(1024, 6);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("{2,4,8}"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, StopLevelAndThreshold) {
  EXPECT_EQ(stop_level(3, 8), -1);
  EXPECT_EQ(stop_level(3, 4), 0);
  EXPECT_EQ(stop_level(3, 2), 1);
  EXPECT_EQ(additive_threshold(2), 36u);
  EXPECT_EQ(additive_threshold(4), 54u);
  EXPECT_EQ(additive_threshold(8), 72u);
}

TEST(Pipeline, ExactFallbackBelowCutoff) {
  Graph g = gen_gnp(100, 0.05, 7);
  RunResult r = run(g, RunConfig{});
  EXPECT_TRUE(r.report.exact_fallback);
  EXPECT_EQ(r.est, init_21_approx(g, InitVariant::exact));
  EXPECT_EQ(r.report.to_json()["exact_fallback"], true);
}

TEST(Pipeline, PhaseNames) {
  Graph g = gen_gnp(300, 0.02, 1);
  RunConfig cfg;
  cfg.force_pipeline = true;
  cfg.snapshot_phases = true;
  cfg.k = 2;
  RunResult r = run(g, cfg);
  std::vector<std::string> names;
  for (const auto& p : r.report.phases) names.push_back(p.name);
  EXPECT_EQ(names, (std::vector<std::string>{"init", "low_degree", "structures", "seed_pivots",
                                              "ensure_closeness", "base_case", "final_1"}));
  cfg.k = 4;
  names.clear();
  for (const auto& p : run(g, cfg).report.phases) names.push_back(p.name);
  EXPECT_EQ(names.back(), "final_0");
  EXPECT_EQ(names[names.size() - 2], "general_1");
  EXPECT_EQ(r.snapshots.size(), r.report.phases.size());
  EXPECT_EQ(r.snapshots.back().second, r.est);
}

// Full forced runs: soundness, the far-pair 2-approximation and the combined
// bound, on families with distant pairs.
struct RunCase {
  std::string family;
  Vertex n;
  std::uint32_t k;
  std::uint64_t seed;
};

void PrintTo(const RunCase& c, std::ostream* os) {
  *os << c.family << " n=" << c.n << " k=" << c.k << " seed=" << c.seed;
}

class FullRun : public ::testing::TestWithParam<RunCase> {};

TEST_P(FullRun, GuaranteesHold) {
  const RunCase& c = GetParam();
  GeneratorSpec spec{.family = c.family, .n = c.n, .seed = c.seed};
  spec.p = 0.02;
  Graph g = generate(spec);
  RunConfig cfg;
  cfg.force_pipeline = true;
  cfg.k = c.k;
  cfg.seed = c.seed;
  RunResult r = run(g, cfg);
  EXPECT_TRUE(r.est.is_symmetric());
  StretchReport rep = check_guarantees(r.est, exact_apsp(g), r.report.k);
  EXPECT_EQ(rep.soundness, 0u);
  EXPECT_EQ(rep.two_approx, 0u);
  EXPECT_EQ(rep.combined, 0u);
  EXPECT_EQ(rep.asymmetric, 0u);
}

INSTANTIATE_TEST_SUITE_P(
    Cases, FullRun,
    ::testing::Values(RunCase{"gnp", 500, 0, 9}, RunCase{"path-with-chords", 1000, 4, 2},
                      RunCase{"path-with-chords", 700, 2, 11}, RunCase{"grid", 400, 2, 3},
                      RunCase{"barbell", 300, 0, 1}, RunCase{"path", 300, 4, 5}),
    [](const auto& info) {
      std::string s = info.param.family + "_" + std::to_string(info.param.n) + "_k" +
                      std::to_string(info.param.k);
      std::replace(s.begin(), s.end(), '-', '_');
      return s;
    });

TEST(Pipeline, StressConfigStaysSound) {
  Graph g = gen_path_with_chords(400, 4, 3);
  RunConfig cfg;
  cfg.force_pipeline = true;
  cfg.init = InitVariant::adversarial;
  cfg.low_degree = LowDegreeBackend::none;
  cfg.c_deg = 0.25;
  for (std::uint32_t k : {2u, 4u, 8u}) {
    cfg.k = k;
    RunResult r = run(g, cfg);
    StretchReport rep = check_guarantees(r.est, exact_apsp(g), r.report.k);
    EXPECT_EQ(rep.soundness, 0u) << "k=" << k;
    EXPECT_EQ(rep.two_approx, 0u) << "k=" << k;
    EXPECT_EQ(rep.combined, 0u) << "k=" << k;
  }
}

TEST(Pipeline, PhaseCountersSumToTotals) {
  Graph g = gen_gnp(1024, 0.01, 11);
  RunConfig cfg;
  cfg.k = 2;
  RunResult r = run(g, cfg);
  OpCounters sum;
  for (const auto& p : r.report.phases) sum += p.counters;
  EXPECT_EQ(sum.relaxations, r.report.totals().relaxations);
  EXPECT_EQ(sum.edge_scans, r.report.totals().edge_scans);
  auto j = r.report.to_json();
  EXPECT_EQ(j["totals"]["relaxations"].get<std::uint64_t>(), sum.relaxations);
  EXPECT_EQ(j["phases"].back()["cumulative_ops"].get<std::uint64_t>(), sum.total());
  EXPECT_EQ(j["fast_pivot_mismatches"], nullptr);
  EXPECT_EQ(j["events"]["fast_pivot_mismatches"], 0);
}

TEST(Pipeline, DeterministicAcrossThreads) {
  Graph g = gen_power_law(500, 2.3, 8, 6);
  RunConfig cfg;
  cfg.force_pipeline = true;
  cfg.k = 4;
  cfg.seed = 6;
  cfg.low_degree = LowDegreeBackend::bk;
  std::string first;
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    cfg.threads = threads;
    RunResult r = run(g, cfg);
    std::ostringstream out;
    write_matrix(out, r.est);
    if (first.empty()) first = out.str();
    EXPECT_EQ(out.str(), first) << threads << " threads";
  }
}

TEST(Pipeline, SeedChangesSamplesNotSoundness) {
  Graph g = gen_grid(20, 20);
  RunConfig cfg;
  cfg.force_pipeline = true;
  cfg.seed = 1;
  RunResult a = run(g, cfg);
  cfg.seed = 2;
  RunResult b = run(g, cfg);
  EXPECT_NE(a.structures.hierarchy.levels, b.structures.hierarchy.levels);
  EXPECT_EQ(check_guarantees(b.est, exact_apsp(g), b.report.k).soundness, 0u);
}

TEST(Pipeline, ReportJson) {
  Graph g = gen_path(300);
  RunConfig cfg;
  cfg.force_pipeline = true;
  RunResult r = run(g, cfg);
  auto side = matrix_sidecar(r.est, r.report);
  EXPECT_EQ(side["format"], "APXM");
  EXPECT_EQ(side["n"], 300);
  EXPECT_EQ(side["digest"], digest_hex(r.est.digest()));
  EXPECT_EQ(side["report"]["config"]["init_variant"], "additive2");
  EXPECT_EQ(side["report"]["level_sizes"].size(), 3u);
}

TEST(Pipeline, TinyInputs) {
  EXPECT_THROW(run(from_edge_list({}, 1), RunConfig{}), InputError);
  Graph g = from_edge_list({{0, 1}, {1, 2}}, 3);
  RunConfig cfg;
  cfg.force_pipeline = true;
  RunResult r = run(g, cfg);
  EXPECT_EQ(r.est.at(0, 2), 2u);
}

TEST(Pipeline, DisconnectedGraph) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < 150; ++v) e.push_back({v, v + 1});
  for (Vertex v = 150; v + 1 < 300; ++v) e.push_back({v, v + 1});
  Graph g = from_edge_list(e, 300);
  RunConfig cfg;
  cfg.force_pipeline = true;
  RunResult r = run(g, cfg);
  EXPECT_EQ(r.est.at(0, 299), kInfinity);
  StretchReport rep = check_guarantees(r.est, exact_apsp(g), r.report.k);
  EXPECT_TRUE(rep.clean());
  EXPECT_EQ(rep.combined, 0u);
}

}  // namespace
}  // namespace apx
