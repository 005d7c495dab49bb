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

#ifndef APX_ESTIMATE_HPP_
#define APX_ESTIMATE_HPP_

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "apx/core.hpp"

namespace apx {

// Dense symmetric n x n matrix of sound upper bounds on hop distances.
// Both triangles are stored so that rows are contiguous; every write goes to
// (s,t) and (t,s) together. Entries only ever decrease; the diagonal is 0.
class EstimateMatrix {
 public:
  EstimateMatrix() = default;
  explicit EstimateMatrix(Vertex n)
      : n_(n), data_(static_cast<std::size_t>(n) * n, kInfinity) {
    for (Vertex v = 0; v < n; ++v) data_[index(v, v)] = 0;
  }

  Vertex size() const { return n_; }

  Distance at(Vertex s, Vertex t) const { return data_[index(s, t)]; }

  std::span<const Distance> row(Vertex s) const {
    return {data_.data() + static_cast<std::size_t>(s) * n_, n_};
  }

  // est(s,t) = est(t,s) = min(old, val). Returns true on improvement.
  bool relax(Vertex s, Vertex t, Distance val) {
    if (s == t) return false;
    Distance& a = data_[index(s, t)];
    if (val >= a) return false;
    a = val;
    data_[index(t, s)] = val;
    return true;
  }

  // Thread-safe variant of relax for phases that merge concurrently. Min is
  // commutative and idempotent, so the final matrix does not depend on the
  // interleaving.
  void relax_atomic(Vertex s, Vertex t, Distance val) {
    if (s == t) return;
    atomic_min(data_[index(s, t)], val);
    atomic_min(data_[index(t, s)], val);
  }

  std::span<const Distance> raw() const { return data_; }

  // Unchecked single-cell write, for deserialization only.
  void set_raw_(Vertex s, Vertex t, Distance val) { data_[index(s, t)] = val; }

  // Row-owner protocol for parallel phases: each worker lowers only the rows
  // it owns through mutable_row (so there are no write conflicts), then
  // symmetrize_min restores est(s,t) = est(t,s) = min of the two sides. The
  // result is independent of scheduling. The matrix is asymmetric between
  // the two calls.
  Distance* mutable_row(Vertex s) { return data_.data() + static_cast<std::size_t>(s) * n_; }

  void symmetrize_min() {
    constexpr Vertex kTile = 64;
    for (Vertex bi = 0; bi < n_; bi += kTile) {
      for (Vertex bj = bi; bj < n_; bj += kTile) {
        const Vertex ie = std::min(n_, bi + kTile);
        const Vertex je = std::min(n_, bj + kTile);
        for (Vertex i = bi; i < ie; ++i) {
          for (Vertex j = std::max(bj, i + 1); j < je; ++j) {
            Distance& a = data_[index(i, j)];
            Distance& b = data_[index(j, i)];
            const Distance m = std::min(a, b);
            a = m;
            b = m;
          }
        }
      }
    }
  }

  bool is_symmetric() const {
    for (Vertex i = 0; i < n_; ++i)
      for (Vertex j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  // FNV-1a over the little-endian entries.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Distance d : data_) {
      for (int b = 0; b < 4; ++b) {
        h ^= (d >> (8 * b)) & 0xFF;
        h *= 0x100000001b3ULL;
      }
    }
    return h;
  }

  bool operator==(const EstimateMatrix&) const = default;

 private:
  std::size_t index(Vertex s, Vertex t) const { return static_cast<std::size_t>(s) * n_ + t; }

  static void atomic_min(Distance& slot, Distance val) {
    std::atomic_ref<Distance> ref(slot);
    Distance cur = ref.load(std::memory_order_relaxed);
    while (val < cur && !ref.compare_exchange_weak(cur, val, std::memory_order_relaxed)) {
    }
  }

  Vertex n_ = 0;
  std::vector<Distance> data_;
};

inline std::string digest_hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

// ---------------------------------------------------------------------------
// Binary dump: "APXM" magic, uint32 n, then n*n uint32 entries row-major, all
// little-endian. kInfinity is written as 0xFFFFFFFF.

inline constexpr char kMatrixMagic[4] = {'A', 'P', 'X', 'M'};

namespace detail {
inline void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}
inline std::uint32_t get_u32(const unsigned char* b) {
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace detail

inline void write_matrix(std::ostream& out, const EstimateMatrix& m) {
  out.write(kMatrixMagic, 4);
  detail::put_u32(out, m.size());
  std::vector<unsigned char> buf(static_cast<std::size_t>(m.size()) * 4);
  for (Vertex s = 0; s < m.size(); ++s) {
    auto row = m.row(s);
    for (std::size_t t = 0; t < row.size(); ++t) {
      const Distance d = row[t];
      buf[4 * t] = static_cast<unsigned char>(d);
      buf[4 * t + 1] = static_cast<unsigned char>(d >> 8);
      buf[4 * t + 2] = static_cast<unsigned char>(d >> 16);
      buf[4 * t + 3] = static_cast<unsigned char>(d >> 24);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
}

inline void write_matrix_file(const std::string& path, const EstimateMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write matrix file: " + path);
  write_matrix(out, m);
  if (!out) throw InputError("write failed: " + path);
}

// Reads a dump into a matrix. Symmetry is not enforced here; verification
// reports asymmetric entries separately.
inline EstimateMatrix read_matrix(std::istream& in) {
  char magic[4];
  unsigned char nb[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMatrixMagic, 4) != 0) {
    throw InputError("matrix dump: bad magic");
  }
  if (!in.read(reinterpret_cast<char*>(nb), 4)) throw InputError("matrix dump: truncated header");
  const Vertex n = detail::get_u32(nb);
  EstimateMatrix m(n);
  std::vector<unsigned char> buf(static_cast<std::size_t>(n) * 4);
  for (Vertex s = 0; s < n; ++s) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      throw InputError("matrix dump: truncated at row " + std::to_string(s));
    }
    for (Vertex t = 0; t < n; ++t) m.set_raw_(s, t, detail::get_u32(&buf[4 * t]));
  }
  return m;
}

inline EstimateMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open matrix file: " + path);
  return read_matrix(in);
}

}  // namespace apx

#endif  // APX_ESTIMATE_HPP_
