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

#ifndef APX_CORE_HPP_
#define APX_CORE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace apx {

using Vertex = std::uint32_t;

// Hop count. kInfinity marks "no walk known"; finite values stay below 4n.
using Distance = std::uint32_t;

inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

constexpr Distance sat_add(Distance a, Distance b) noexcept {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

constexpr Distance sat_add(Distance a, Distance b, Distance c) noexcept {
  return sat_add(sat_add(a, b), c);
}

// Malformed user input: bad vertex ids, unreadable files, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition (e.g. asked for the degree of a
// non-edge).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double log2_of(std::size_t n) {
  return std::log2(static_cast<double>(n));
}

// ceil(log2 n) for n >= 1, computed on integers.
inline std::uint32_t ceil_log2(std::size_t n) {
  std::uint32_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

// floor(log2 n) for n >= 1.
inline std::uint32_t floor_log2(std::size_t n) {
  std::uint32_t r = 0;
  while ((n >> (r + 1)) != 0) ++r;
  return r;
}

}  // namespace apx

#endif  // APX_CORE_HPP_
