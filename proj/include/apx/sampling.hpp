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

#ifndef APX_SAMPLING_HPP_
#define APX_SAMPLING_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "apx/core.hpp"
#include "json.hpp"

namespace apx {

// Counter-based randomness: every draw is a pure function of
// (seed, stream, a, b), so results never depend on iteration order or the
// number of worker threads.
namespace rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                                    std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ a);
  return splitmix64(h ^ b);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                      std::uint64_t b = 0) {
  return static_cast<double>(hash(seed, stream, a, b) >> 11) * 0x1.0p-53;
}

inline bool bernoulli(double p, std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                      std::uint64_t b = 0) {
  return uniform(seed, stream, a, b) < p;
}

// Stream ids. Fixed forever: changing one changes every pinned result.
enum Stream : std::uint64_t {
  kLevelStream = 1,
  kBaseStream = 2,
  kDominatorStream = 3,
  kLowDegreeStream = 4,
  kGeneratorStream = 16,
};

}  // namespace rng

// Number of levels: max(1, floor(log2 log2 n)), i.e. the largest j with
// 2^(2^j) <= n.
inline std::uint32_t num_levels(std::size_t n) {
  if (n < 2) return 1;
  return std::max<std::uint32_t>(1, floor_log2(floor_log2(n)));
}

// 2^(2^i), saturated at 2^63.
inline std::uint64_t level_size_factor(std::uint32_t i) {
  const std::uint32_t e = i >= 6 ? 63 : (1u << i);
  return std::uint64_t{1} << std::min<std::uint32_t>(e, 63);
}

// Marginal rate of level i: 2^-(2^i) for i >= 1, 1 for i = 0.
inline double level_marginal_rate(std::uint32_t i) {
  return i == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(1u << i));
}

// Probability of keeping a vertex of A_{i-1} in A_i. A_1 is drawn from V at
// rate 1/4; deeper levels at 2^-(2^(i-1)), which makes the marginal rate of
// A_i equal to 2^-(2^i).
inline double level_conditional_rate(std::uint32_t i) {
  if (i == 0) return 1.0;
  if (i == 1) return 0.25;
  return std::ldexp(1.0, -static_cast<int>(1u << (i - 1)));
}

// Nested level sets A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{L-1}.
struct SampleHierarchy {
  Vertex n = 0;
  std::uint32_t L = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Vertex>> levels;  // ascending vertex ids per level
  std::vector<std::uint8_t> level_of;       // highest i with v in A_i

  bool contains(std::uint32_t i, Vertex v) const { return level_of[v] >= i; }
  const std::vector<Vertex>& level(std::uint32_t i) const { return levels[i]; }

  nlohmann::json to_json() const {
    return nlohmann::json{{"L", L}, {"levels", levels}, {"seed", seed}};
  }
};

inline SampleHierarchy build_hierarchy(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InputError("build_hierarchy: need n >= 2");
  SampleHierarchy h;
  h.n = static_cast<Vertex>(n);
  h.L = num_levels(n);
  h.seed = seed;
  h.levels.assign(h.L, {});
  h.level_of.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    std::uint32_t top = 0;
    for (std::uint32_t i = 1; i < h.L; ++i) {
      if (!rng::bernoulli(level_conditional_rate(i), seed, rng::kLevelStream, i, v)) break;
      top = i;
    }
    h.level_of[v] = static_cast<std::uint8_t>(top);
    for (std::uint32_t i = 0; i <= top; ++i) h.levels[i].push_back(v);
  }
  return h;
}

// Independent samples B_l at rate 2^-l for l in [ceil(log2(n)/2), floor(log2 n)].
struct BaseSamples {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::map<std::uint32_t, std::vector<Vertex>> samples;

  const std::vector<Vertex>& at(std::uint32_t l) const { return samples.at(l); }
};

inline std::uint32_t base_level_lo(std::size_t n) {
  return static_cast<std::uint32_t>(std::ceil(log2_of(n) / 2.0));
}
inline std::uint32_t base_level_hi(std::size_t n) { return floor_log2(n); }

inline BaseSamples build_base_samples(std::size_t n, std::uint64_t seed) {
  if (n < 4) throw InputError("build_base_samples: need n >= 4");
  BaseSamples b;
  b.lo = base_level_lo(n);
  b.hi = base_level_hi(n);
  for (std::uint32_t l = b.lo; l <= b.hi; ++l) {
    auto& out = b.samples[l];
    const double p = std::ldexp(1.0, -static_cast<int>(l));
    for (Vertex v = 0; v < n; ++v) {
      if (rng::bernoulli(p, seed, rng::kBaseStream, l, v)) out.push_back(v);
    }
  }
  return b;
}

}  // namespace apx

#endif  // APX_SAMPLING_HPP_
