// Copyright 2026 The ReverbForge Authors
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

#ifndef REVERBFORGE_PARALLEL_HPP_
#define REVERBFORGE_PARALLEL_HPP_

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace reverbforge {

// Runs fn(i) for i in [0, n) across `workers` threads. Work items must not
// depend on execution order: every batch operation in this toolkit derives
// its randomness from a per-item substream so outputs are identical at any
// worker count. The first exception thrown by any item is rethrown here.
template <typename Fn>
void parallel_for(long n, int workers, Fn&& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (true) {
      const long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int spawned =
      static_cast<int>(std::min<long>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(spawned));
  for (int w = 0; w < spawned; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace reverbforge

#endif  // REVERBFORGE_PARALLEL_HPP_
