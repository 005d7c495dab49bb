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

#ifndef APX_BENCH_HPP_
#define APX_BENCH_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apx/generators.hpp"
#include "apx/pipeline.hpp"
#include "json.hpp"

namespace apx {

struct BenchRecord {
  Vertex n = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> phase_seconds;
  std::uint64_t relaxations = 0;
  std::uint64_t edge_scans = 0;
  std::uint64_t matrix_bytes = 0;

  std::uint64_t ops() const { return relaxations + edge_scans; }

  nlohmann::json to_json() const {
    nlohmann::json phases = nlohmann::json::object();
    for (const auto& [name, s] : phase_seconds) phases[name] = s;
    return {{"n", n},
            {"k", k},
            {"seed", seed},
            {"phase_seconds", phases},
            {"relaxations", relaxations},
            {"edge_scans", edge_scans},
            {"ops", ops()},
            {"peak_matrix_bytes", matrix_bytes}};
  }
};

inline BenchRecord bench_record(const RunReport& rep) {
  BenchRecord r;
  r.n = rep.n;
  r.k = rep.k;
  r.seed = rep.config.seed;
  for (const auto& p : rep.phases) r.phase_seconds.emplace_back(p.name, p.seconds);
  const OpCounters t = rep.totals();
  r.relaxations = t.relaxations;
  r.edge_scans = t.edge_scans;
  // The estimate matrix plus one phase snapshot.
  r.matrix_bytes = 2ull * rep.n * rep.n * sizeof(Distance);
  return r;
}

// Least-squares slope of log(y) against log(x). Needs two distinct x values.
inline std::optional<double> fit_loglog_slope(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

// Per k (as labelled by the caller): mean ops per n, and the fitted slope
// next to the reference exponent 2 + 1/k.
inline nlohmann::json scaling_summary(const std::vector<BenchRecord>& records,
                                      const std::map<std::uint32_t, std::string>& labels = {}) {
  std::map<std::uint32_t, std::map<Vertex, std::vector<double>>> by_k;
  for (const auto& r : records) by_k[r.k][r.n].push_back(static_cast<double>(r.ops()));
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, per_n] : by_k) {
    std::vector<double> xs, ys;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [n, v] : per_n) {
      double mean = 0;
      for (double d : v) mean += d;
      mean /= v.size();
      xs.push_back(n);
      ys.push_back(mean);
      counts[std::to_string(n)] = mean;
    }
    nlohmann::json entry = {{"k", k}, {"mean_ops", counts}, {"reference_exponent", 2.0 + 1.0 / k}};
    if (auto it = labels.find(k); it != labels.end()) entry["label"] = it->second;
    if (auto slope = fit_loglog_slope(xs, ys)) entry["slope"] = *slope;
    out.push_back(entry);
  }
  return out;
}

}  // namespace apx

#endif  // APX_BENCH_HPP_
