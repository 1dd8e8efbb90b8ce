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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spheremesh/kernel.h"
#include "spheremesh/mesh.h"

namespace spheremesh {

// Default worker count: SPHEREMESH_THREADS if set and positive, otherwise
// the hardware concurrency.
int DefaultThreadCount();

// Inserts the given vertices (already stored in mesh.vertices, disjoint from
// the triangulated ones) in the given order using `threads` workers.
//
// The order is split into `threads` contiguous parts. Each iteration every
// worker builds the cavity of its current point and claims the cavity
// triangles plus their outer neighbours; after a barrier, a worker whose
// claims all survived (smallest thread id wins each contested triangle)
// rewires the mesh, the others retry the same point next iteration. With one
// thread this is the serial kernel. Results are deterministic for a fixed
// thread count. Triangles are compacted on return.
//
// `hints`, if not empty, holds a starting triangle per entry of `order`.
DelaunayStats ParallelInsert(SphericalMesh& mesh,
                             std::span<const VertexId> order, int threads,
                             const InsertOptions& options = {},
                             std::span<const TriId> hints = {});

// Appends the points to mesh.vertices, then ParallelInsert on them in the
// given order.
DelaunayStats ParallelInsertPoints(SphericalMesh& mesh,
                                   std::span<const UnitPoint> points,
                                   int threads);

// n points uniformly distributed on S, reproducible for a given seed.
std::vector<UnitPoint> UniformSpherePoints(std::size_t n, std::uint64_t seed);

struct ThroughputReport {
  std::size_t n = 0;
  int threads = 1;
  double seconds = 0.0;
  double points_per_second = 0.0;
  double speedup = 1.0;  // against the single-thread run of the same input
  std::string ToJson() const;
};

// Triangulates n uniform random points (fixed seed) with DelaunayFromPoints
// using `threads` workers, timing everything after point generation. When
// `baseline_seconds` is positive the speedup is computed against it.
ThroughputReport ThroughputBenchmark(std::size_t n, int threads,
                                     double baseline_seconds = 0.0,
                                     std::uint64_t seed = 1);

}  // namespace spheremesh
