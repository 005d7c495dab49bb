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

// apx gen|run|verify|bench

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apx/apx.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

unsigned default_threads() {
  if (const char* env = std::getenv("APX_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "apx: ignoring APX_THREADS='" << env << "'\n";
  }
  return 1;
}

// "logn" (or "0") selects k = 2^L.
std::uint32_t parse_k(const std::string& s) {
  if (s == "logn" || s == "log" || s == "0") return 0;
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos == s.size() && v <= 0xffffffffu) return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
  }
  throw apx::InputError("invalid k '" + s + "': expected a power of two or 'logn'");
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw apx::InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

struct GenArgs {
  apx::GeneratorSpec spec;
  std::string out;
};

struct RunArgs {
  std::string graph, matrix, report;
  std::string k = "logn";
  std::string init = "additive2", lowdeg = "exact_on_subgraph", pivot_mode = "fast";
  apx::RunConfig cfg;
};

struct VerifyArgs {
  std::string graph, matrix, report;
  std::string k = "logn";
};

struct BenchArgs {
  apx::GeneratorSpec spec;
  std::vector<apx::Vertex> sizes;
  std::vector<std::string> ks{"2", "4", "logn"};
  std::vector<std::uint64_t> seeds{1};
  std::string out, summary;
  apx::RunConfig cfg;
};

void add_generator_options(CLI::App* cmd, apx::GeneratorSpec& spec) {
  cmd->add_option("--family", spec.family, "gnp|path|grid|barbell|path-with-chords|power-law")
      ->capture_default_str();
  cmd->add_option("--p", spec.p, "gnp edge probability");
  cmd->add_option("--rows", spec.rows, "grid rows");
  cmd->add_option("--cols", spec.cols, "grid columns");
  cmd->add_option("--clique", spec.clique, "barbell clique size (0 = n/4)");
  cmd->add_option("--chords", spec.chords, "path-with-chords: random hub chords")
      ->capture_default_str();
  cmd->add_option("--exponent", spec.exponent, "power-law exponent")->capture_default_str();
  cmd->add_option("--avg-degree", spec.avg_degree, "power-law mean degree")
      ->capture_default_str();
}

void add_run_options(CLI::App* cmd, apx::RunConfig& cfg, std::string& init, std::string& lowdeg,
                     std::string& pivot_mode) {
  cmd->add_option("--exact-fallback-cutoff", cfg.exact_fallback_cutoff,
                  "below this n, compute exact distances instead")
      ->capture_default_str();
  cmd->add_flag("--force-pipeline", cfg.force_pipeline, "run the pipeline at any n");
  cmd->add_option("--backend-lowdeg", lowdeg, "exact_on_subgraph|bk|none")->capture_default_str();
  cmd->add_option("--init-variant", init, "exact|additive2|adversarial")->capture_default_str();
  cmd->add_option("--pivot-mode", pivot_mode, "fast|reference")->capture_default_str();
  cmd->add_option("--c-deg", cfg.c_deg, "degree threshold constant")->capture_default_str();
  cmd->add_option("--c-ball", cfg.c_ball, "ball size constant")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker threads (default: APX_THREADS or 1)")
      ->capture_default_str();
}

void finish_config(apx::RunConfig& cfg, const std::string& init, const std::string& lowdeg,
                   const std::string& pivot_mode) {
  cfg.init = apx::parse_init_variant(init);
  cfg.low_degree = apx::parse_low_degree_backend(lowdeg);
  if (pivot_mode == "fast") {
    cfg.pivot_mode = apx::PivotMode::fast;
  } else if (pivot_mode == "reference") {
    cfg.pivot_mode = apx::PivotMode::reference;
  } else {
    throw apx::InputError("invalid --pivot-mode '" + pivot_mode + "' (fast|reference)");
  }
  if (cfg.threads == 0) throw apx::InputError("--threads must be >= 1");
}

int cmd_gen(const GenArgs& a) {
  const apx::Graph g = apx::generate(a.spec);
  apx::write_edge_list_file(a.out, g);
  json j = {{"spec", a.spec.to_json()},
            {"n", g.num_vertices()},
            {"m", g.num_edges()},
            {"out", a.out}};
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_run(RunArgs& a) {
  finish_config(a.cfg, a.init, a.lowdeg, a.pivot_mode);
  const apx::Graph g = apx::read_edge_list_file(a.graph);
  a.cfg.k = parse_k(a.k);
  apx::resolve_k(g.num_vertices(), a.cfg.k);  // usage error before any work
  const apx::RunResult res = apx::run(g, a.cfg);
  if (!a.matrix.empty()) {
    apx::write_matrix_file(a.matrix, res.est);
    write_json(a.matrix + ".json", apx::matrix_sidecar(res.est, res.report));
    for (const auto& [name, snap] : res.snapshots)
      apx::write_matrix_file(a.matrix + "." + name, snap);
  }
  write_json(a.report, res.report.to_json());
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  const apx::Graph g = apx::read_edge_list_file(a.graph);
  const apx::EstimateMatrix est = apx::read_matrix_file(a.matrix);
  if (est.size() != g.num_vertices()) {
    throw apx::InputError("dimension mismatch: matrix has n=" + std::to_string(est.size()) +
                          ", graph has n=" + std::to_string(g.num_vertices()));
  }
  const std::uint32_t k = apx::resolve_k(g.num_vertices(), parse_k(a.k));
  const apx::ExactDistances exact = apx::exact_apsp(g);
  const apx::StretchReport stretch = apx::check_guarantees(est, exact, k);
  const json report = apx::verify_report(stretch);
  write_json(a.report, report);
  return report.at("ok").get<bool>() ? 0 : 1;
}

int cmd_bench(BenchArgs& a, const std::string& init, const std::string& lowdeg,
              const std::string& pivot_mode) {
  finish_config(a.cfg, init, lowdeg, pivot_mode);
  if (a.sizes.empty()) throw apx::InputError("bench: --sizes is required");
  for (std::size_t i = 1; i < a.sizes.size(); ++i)
    if (a.sizes[i] <= a.sizes[i - 1]) throw apx::InputError("bench: sizes must be ascending");
  std::ofstream log;
  if (!a.out.empty()) {
    log.open(a.out, std::ios::app);
    if (!log) throw apx::InputError("cannot write " + a.out);
  }
  a.cfg.force_pipeline = true;
  std::vector<apx::BenchRecord> records;
  std::map<std::uint32_t, std::string> labels;
  for (apx::Vertex n : a.sizes) {
    for (std::uint64_t seed : a.seeds) {
      apx::GeneratorSpec spec = a.spec;
      spec.n = n;
      spec.seed = seed;
      const apx::Graph g = apx::generate(spec);
      for (const std::string& ks : a.ks) {
        apx::RunConfig cfg = a.cfg;
        cfg.k = parse_k(ks);
        cfg.seed = seed;
        const apx::RunResult res = apx::run(g, cfg);
        apx::BenchRecord rec = apx::bench_record(res.report);
        if (cfg.k == 0) labels[rec.k] = "logn";
        json line = rec.to_json();
        line["k_arg"] = ks;
        line["family"] = spec.family;
        line["m"] = g.num_edges();
        if (log.is_open()) log << line.dump() << "\n" << std::flush;
        std::cerr << "bench n=" << n << " seed=" << seed << " k=" << ks << " ops=" << rec.ops()
                  << " s=" << res.report.seconds() << "\n";
        records.push_back(std::move(rec));
      }
    }
  }
  json summary = {{"family", a.spec.family},
                  {"sizes", a.sizes},
                  {"seeds", a.seeds},
                  {"per_k", apx::scaling_summary(records, labels)}};
  write_json(a.summary, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-approximate all-pairs shortest paths for unweighted undirected graphs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph as an edge list");
  add_generator_options(gen_cmd, gen.spec);
  gen_cmd->add_option("--n", gen.spec.n, "vertex count");
  gen_cmd->add_option("--seed", gen.spec.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--out,-o", gen.out, "output edge-list path")->required();

  RunArgs run;
  run.cfg.threads = default_threads();
  auto* run_cmd = app.add_subcommand("run", "run the pipeline on an edge list");
  run_cmd->add_option("--graph,-g", run.graph, "edge-list path")->required();
  run_cmd->add_option("--k", run.k, "power of two in [2, 2^L], or 'logn'")->capture_default_str();
  run_cmd->add_option("--seed", run.cfg.seed, "sampling seed")->capture_default_str();
  run_cmd->add_option("--out,-o", run.matrix, "matrix dump path (sidecar: <path>.json)");
  run_cmd->add_option("--report", run.report, "report JSON path (default stdout)");
  run_cmd->add_flag("--snapshot-phases", run.cfg.snapshot_phases,
                    "also dump the matrix after each phase as <out>.<phase>");
  add_run_options(run_cmd, run.cfg, run.init, run.lowdeg, run.pivot_mode);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a matrix dump against exact distances");
  verify_cmd->add_option("--graph,-g", verify.graph, "edge-list path")->required();
  verify_cmd->add_option("--matrix,-m", verify.matrix, "matrix dump path")->required();
  verify_cmd->add_option("--k", verify.k, "k the matrix was computed for")
      ->capture_default_str();
  verify_cmd->add_option("--report", verify.report, "report JSON path (default stdout)");

  BenchArgs bench;
  bench.spec.family = "path-with-chords";
  bench.cfg.threads = default_threads();
  std::string b_init = "additive2", b_lowdeg = "exact_on_subgraph", b_pivot = "fast";
  auto* bench_cmd = app.add_subcommand("bench", "scaling benchmark over sizes, k and seeds");
  add_generator_options(bench_cmd, bench.spec);
  bench_cmd->add_option("--sizes", bench.sizes, "ascending vertex counts")->required()
      ->delimiter(',');
  bench_cmd->add_option("--k", bench.ks, "k values ('logn' allowed)")->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "seeds")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--out,-o", bench.out, "append BenchRecord JSON lines here");
  bench_cmd->add_option("--summary", bench.summary, "summary JSON path (default stdout)");
  add_run_options(bench_cmd, bench.cfg, b_init, b_lowdeg, b_pivot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(verify);
    if (*bench_cmd) return cmd_bench(bench, b_init, b_lowdeg, b_pivot);
  } catch (const apx::InputError& e) {
    std::cerr << "apx: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "apx: internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
