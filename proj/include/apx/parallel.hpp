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

#ifndef APX_PARALLEL_HPP_
#define APX_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace apx {

// Work counters. Both are deterministic functions of the input and config:
// relaxations counts attempted min-merges, not successful ones.
struct OpCounters {
  std::uint64_t relaxations = 0;
  std::uint64_t edge_scans = 0;

  OpCounters& operator+=(const OpCounters& o) {
    relaxations += o.relaxations;
    edge_scans += o.edge_scans;
    return *this;
  }
  std::uint64_t total() const { return relaxations + edge_scans; }
};

// Runs body(index, worker) for index in [0, count). With threads <= 1 the
// loop runs inline in index order. Workers pull chunks from a shared cursor.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body, std::size_t chunk = 16) {
  if (count == 0) return;
  threads = std::max(1u, threads);
  if (threads == 1 || count <= chunk) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, (count + chunk - 1) / chunk));
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&](unsigned tid) {
    try {
      for (;;) {
        const std::size_t begin = cursor.fetch_add(chunk);
        if (begin >= count) break;
        const std::size_t end = std::min(count, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) body(i, tid);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Per-worker counter slots, summed on demand.
class CounterSlots {
 public:
  explicit CounterSlots(unsigned threads) : slots_(std::max(1u, threads)) {}
  OpCounters& operator[](unsigned tid) { return slots_[tid].value; }
  OpCounters sum() const {
    OpCounters s;
    for (const auto& slot : slots_) s += slot.value;
    return s;
  }

 private:
  struct alignas(64) Slot {
    OpCounters value;
  };
  std::vector<Slot> slots_;
};

}  // namespace apx

#endif  // APX_PARALLEL_HPP_
