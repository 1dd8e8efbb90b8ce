// Copyright 2026 The SphereMesh Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace spheremesh {

// Runs fn(begin, end, worker) over `threads` contiguous chunks of [0, n) and
// joins. The first exception thrown by a worker is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn&& fn) {
  const std::size_t m =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (m == 1) {
    fn(std::size_t{0}, n, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(m);
  {
    std::vector<std::jthread> workers;
    workers.reserve(m);
    for (std::size_t w = 0; w < m; ++w) {
      workers.emplace_back([&, w] {
        try {
          fn(w * n / m, (w + 1) * n / m, static_cast<int>(w));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace spheremesh
