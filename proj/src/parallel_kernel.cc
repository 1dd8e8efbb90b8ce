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

#include "spheremesh/parallel_kernel.h"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <memory>
#include <random>
#include <thread>
#include <vector>

#include "json.hpp"
#include "spheremesh/error.h"

namespace spheremesh {

int DefaultThreadCount() {
  if (const char* env = std::getenv("SPHEREMESH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::uint64_t kWalkSeed = 0x243f6a8885a308d3ULL;

void Count(DelaunayStats& stats, InsertStatus status) {
  switch (status) {
    case InsertStatus::kInserted: ++stats.inserted; break;
    case InsertStatus::kDuplicate: ++stats.duplicates; break;
    case InsertStatus::kRejected: ++stats.rejected; break;
    case InsertStatus::kDegenerate: ++stats.degenerate; break;
  }
}

bool IsLive(const SphericalMesh& mesh, TriId t) {
  return t >= 0 && t < static_cast<TriId>(mesh.triangles.size()) &&
         mesh.triangles[t].live();
}

DelaunayStats SerialInsert(SphericalMesh& mesh,
                           std::span<const VertexId> order,
                           const InsertOptions& options,
                           std::span<const TriId> hints) {
  DelaunayStats stats;
  KernelScratch& scratch = ThreadScratch();
  scratch.rng = kWalkSeed;
  const WalkStats before = scratch.walk_stats;
  TriId hint = mesh.AnyLiveTriangle();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const TriId start =
        (!hints.empty() && IsLive(mesh, hints[i])) ? hints[i] : hint;
    const InsertResult r = InsertVertex(mesh, order[i], start, options, scratch);
    Count(stats, r.status);
    hint = r.triangle;
  }
  stats.iterations = order.size();
  stats.walk.walks = scratch.walk_stats.walks - before.walks;
  stats.walk.steps = scratch.walk_stats.steps - before.steps;
  stats.walk.exhaustive = scratch.walk_stats.exhaustive - before.exhaustive;
  if (!mesh.free_list.empty()) mesh.CompactTriangles();
  return stats;
}

struct Worker {
  std::size_t cursor = 0;
  std::size_t end = 0;
  TriId next_slot = 0;  // pre-reserved triangle slots
  TriId hint = kNone;
  TriId last_ball = kNone;  // written in phase 2 only, read by all in phase 1
  bool has_cavity = false;
  std::vector<TriId> claimed;
  KernelScratch scratch;
  DelaunayStats stats;
  std::exception_ptr error;
};

}  // namespace

DelaunayStats ParallelInsert(SphericalMesh& mesh,
                             std::span<const VertexId> order, int threads,
                             const InsertOptions& options,
                             std::span<const TriId> hints) {
  if (!hints.empty() && hints.size() != order.size()) {
    throw Error(ErrorCode::kContractViolation, "one hint per point expected");
  }
  const std::size_t n = order.size();
  const int m = static_cast<int>(
      std::min<std::size_t>(std::clamp(threads, 1, 255), std::max<std::size_t>(n, 1)));
  if (m == 1) return SerialInsert(mesh, order, options, hints);

  const TriId anchor = mesh.AnyLiveTriangle();
  // Each insertion adds two triangles; give every worker room for its part.
  const TriId base = static_cast<TriId>(mesh.triangles.size());
  mesh.triangles.resize(mesh.triangles.size() + 2 * n);
  std::vector<std::atomic<std::uint64_t>> claims(mesh.triangles.size());
  for (auto& c : claims) c.store(0, std::memory_order_relaxed);

  std::vector<Worker> workers(m);
  for (int t = 0; t < m; ++t) {
    Worker& w = workers[t];
    w.cursor = t * n / m;
    w.end = (t + 1) * n / m;
    w.next_slot = base + static_cast<TriId>(2 * w.cursor);
    w.hint = anchor;
    w.scratch.rng = kWalkSeed ^ (0x9e3779b97f4a7c15ULL * (t + 1));
  }

  std::uint64_t iteration = 1;
  bool done = false;
  std::size_t iterations = 0;
  auto on_round_end = [&]() noexcept {
    ++iteration;
    ++iterations;
    done = true;
    for (const Worker& w : workers) {
      if (w.cursor < w.end && !w.error) done = false;
    }
  };
  std::barrier cavities_built(m);
  std::barrier surgery_done(m, on_round_end);

  auto start_for = [&](Worker& w) {
    if (!hints.empty() && IsLive(mesh, hints[w.cursor])) return hints[w.cursor];
    if (IsLive(mesh, w.hint)) return w.hint;
    for (const Worker& other : workers) {
      if (IsLive(mesh, other.last_ball)) return other.last_ball;
    }
    return mesh.AnyLiveTriangle();
  };

  auto run = [&](int tid) {
    Worker& w = workers[tid];
    const std::uint64_t tag_bits = static_cast<std::uint64_t>(tid);
    while (true) {
      const std::uint64_t mine = (iteration << 8) | tag_bits;
      w.has_cavity = false;
      w.claimed.clear();
      // Phase 1: build one valid cavity (skipping points that fail) and
      // claim it together with the triangles just outside it.
      try {
        while (!w.error && w.cursor < w.end) {
          const VertexId v = order[w.cursor];
          const Vec3 p = mesh.vertices[v].vec();
          const TriId located = Walk(mesh, start_for(w), p, w.scratch);
          const InsertStatus status =
              BuildCavity(mesh, located, p, options, w.scratch);
          if (status == InsertStatus::kInserted) {
            w.hint = located;
            w.has_cavity = true;
            break;
          }
          Count(w.stats, status);
          w.hint = located;
          ++w.cursor;
        }
      } catch (...) {
        w.error = std::current_exception();
        w.has_cavity = false;
      }
      if (w.has_cavity) {
        const Cavity& c = w.scratch.cavity;
        w.claimed.assign(c.triangles.begin(), c.triangles.end());
        for (const BoundaryEdge& be : c.boundary) w.claimed.push_back(be.outer);
        for (TriId t : w.claimed) {
          std::uint64_t cur = claims[t].load(std::memory_order_relaxed);
          while (((cur >> 8) != iteration || (cur & 0xff) > tag_bits) &&
                 !claims[t].compare_exchange_weak(cur, mine,
                                                  std::memory_order_relaxed)) {
          }
        }
      }
      cavities_built.arrive_and_wait();

      // Phase 2: a worker holding every claim rewires its cavity; the others
      // keep the point for the next iteration.
      if (w.has_cavity) {
        bool won = true;
        for (TriId t : w.claimed) {
          if (claims[t].load(std::memory_order_relaxed) != mine) {
            won = false;
            break;
          }
        }
        if (won) {
          const std::array<TriId, 2> extra = {w.next_slot, w.next_slot + 1};
          w.next_slot += 2;
          w.hint = ApplyCavity(mesh, order[w.cursor], w.scratch.cavity, extra,
                               w.scratch);
          w.last_ball = w.hint;
          ++w.stats.inserted;
          ++w.cursor;
        } else {
          ++w.stats.conflicts;
        }
      }
      surgery_done.arrive_and_wait();
      if (done) break;
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(m - 1);
    for (int t = 1; t < m; ++t) pool.emplace_back(run, t);
    run(0);
  }

  DelaunayStats stats;
  for (const Worker& w : workers) {
    if (w.error) std::rethrow_exception(w.error);
    stats.inserted += w.stats.inserted;
    stats.duplicates += w.stats.duplicates;
    stats.rejected += w.stats.rejected;
    stats.degenerate += w.stats.degenerate;
    stats.conflicts += w.stats.conflicts;
    stats.walk.walks += w.scratch.walk_stats.walks;
    stats.walk.steps += w.scratch.walk_stats.steps;
    stats.walk.exhaustive += w.scratch.walk_stats.exhaustive;
  }
  stats.iterations = iterations;
  mesh.CompactTriangles();
  return stats;
}

DelaunayStats ParallelInsertPoints(SphericalMesh& mesh,
                                   std::span<const UnitPoint> points,
                                   int threads) {
  std::vector<VertexId> ids;
  ids.reserve(points.size());
  for (const UnitPoint& p : points) {
    mesh.vertices.push_back(p);
    ids.push_back(static_cast<VertexId>(mesh.vertices.size() - 1));
  }
  return ParallelInsert(mesh, ids, threads);
}

std::string ThroughputReport::ToJson() const {
  nlohmann::json j;
  j["n"] = n;
  j["M"] = threads;
  j["seconds"] = seconds;
  j["points_per_second"] = points_per_second;
  j["speedup"] = speedup;
  return j.dump();
}

std::vector<UnitPoint> UniformSpherePoints(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<UnitPoint> points;
  points.reserve(n);
  while (points.size() < n) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (Norm(v) > 1e-6) points.emplace_back(v);
  }
  return points;
}

ThroughputReport ThroughputBenchmark(std::size_t n, int threads,
                                     double baseline_seconds,
                                     std::uint64_t seed) {
  const std::vector<UnitPoint> points = UniformSpherePoints(n, seed);
  DelaunayOptions options;
  options.threads = threads;
  const auto t0 = std::chrono::steady_clock::now();
  const SphericalMesh mesh = DelaunayFromPoints(points, options);
  const auto t1 = std::chrono::steady_clock::now();
  ThroughputReport r;
  r.n = n;
  r.threads = threads;
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  r.points_per_second = r.seconds > 0.0 ? n / r.seconds : 0.0;
  r.speedup = baseline_seconds > 0.0 && r.seconds > 0.0
                  ? baseline_seconds / r.seconds
                  : 1.0;
  return r;
}

}  // namespace spheremesh
