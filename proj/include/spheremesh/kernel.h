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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spheremesh/geometry.h"
#include "spheremesh/mesh.h"

namespace spheremesh {

class SizeField;

// Squared chord length below which a point is taken to coincide with a vertex
// (chord and arc agree at this scale): 1e-12 geodesic.
inline constexpr double kCoincidentChord2 = 1e-24;

struct InsertOptions {
  // Do not grow cavities across constrained edges.
  bool respect_constraints = false;
  // When set, a point is rejected if any vertex of its cavity lies closer
  // than filter_beta * h(p).
  const SizeField* filter_field = nullptr;
  double filter_beta = 0.7;
};

enum class InsertStatus : std::uint8_t {
  kInserted,
  kDuplicate,
  kRejected,
  kDegenerate,
};

struct BoundaryEdge {
  VertexId a = kNone;
  VertexId b = kNone;
  TriId outer = kNone;     // triangle across (a, b), outside the cavity
  std::int8_t outer_edge = 0;  // index of that edge inside `outer`
  bool constrained = false;
  Region region = Region::kUnknown;  // of the cavity triangle owning the edge
};

struct Cavity {
  std::vector<TriId> triangles;
  std::vector<BoundaryEdge> boundary;  // directed so that (a, b, p) is positive
};

struct WalkStats {
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
  std::uint64_t exhaustive = 0;  // walks that fell back to a full scan
};

// Per-thread working memory for the kernel. Marks are stamped so that no
// clearing is needed between searches.
struct KernelScratch {
  Cavity cavity;
  WalkStats walk_stats;

  std::vector<std::uint32_t> marks;
  std::uint32_t stamp = 0;
  std::vector<TriId> stack;
  std::vector<std::pair<VertexId, int>> fan;
  std::vector<TriId> slots;
  std::uint64_t rng = 0x9e3779b97f4a7c15ULL;

  // Starts a search over `triangle_slots` slots; afterwards marks equal to
  // `stamp` mean inside, `stamp + 1` outside.
  void BeginSearch(std::size_t triangle_slots);
  std::uint32_t NextRandom() {
    rng ^= rng << 13;
    rng ^= rng >> 7;
    rng ^= rng << 17;
    return static_cast<std::uint32_t>(rng >> 32);
  }
};

// Scratch owned by the calling thread, for the convenience overloads.
KernelScratch& ThreadScratch();

// True if (a, b, c, d) are affinely independent and the origin lies strictly
// inside their convex hull.
bool EnclosesOrigin(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

// Mesh of the four hull faces. Throws kDegenerateSeed unless
// EnclosesOrigin(p1, p2, p3, p4).
SphericalMesh Bootstrap(const UnitPoint& p1, const UnitPoint& p2,
                        const UnitPoint& p3, const UnitPoint& p4);

// Same, on vertices already stored in `mesh` (whose triangles are replaced).
void BootstrapVertices(SphericalMesh& mesh, std::array<VertexId, 4> ids);

// Visibility walk from `start` to a triangle containing p (on or inside all
// three edges). Falls back to a scan of all triangles if the walk exceeds its
// step budget.
TriId Walk(const SphericalMesh& mesh, TriId start, const Vec3& p,
           KernelScratch& scratch);
TriId Walk(const SphericalMesh& mesh, TriId start, const UnitPoint& p);

bool TriangleContains(const SphericalMesh& mesh, TriId t, const Vec3& p);

// Grows the cavity of p from `seed` (which must contain p) into
// scratch.cavity and validates it. Anything other than kInserted means the
// cavity must not be applied.
InsertStatus BuildCavity(const SphericalMesh& mesh, TriId seed, const Vec3& p,
                         const InsertOptions& options, KernelScratch& scratch);

// Replaces the cavity by the ball of vertex v. `extra` are two free slots
// (dead triangles) for the two additional ball triangles. Returns a ball
// triangle.
TriId ApplyCavity(SphericalMesh& mesh, VertexId v, const Cavity& cavity,
                  std::array<TriId, 2> extra, KernelScratch& scratch);

struct InsertResult {
  InsertStatus status = InsertStatus::kInserted;
  TriId triangle = kNone;  // a ball triangle, or the located one on failure
};

// Inserts vertex v (already in mesh.vertices) locating from `hint`.
InsertResult InsertVertex(SphericalMesh& mesh, VertexId v, TriId hint,
                          const InsertOptions& options, KernelScratch& scratch);

// Appends p and inserts it. On failure the vertex is removed again and the
// mesh is unchanged.
InsertResult InsertPoint(SphericalMesh& mesh, const UnitPoint& p,
                         TriId hint = kNone, const InsertOptions& options = {});

struct DelaunayOptions {
  int threads = 1;
  // Add four auxiliary vertices when the points fit in an open hemisphere,
  // instead of failing.
  bool allow_helper_vertices = false;
  InsertOptions insert;
};

struct DelaunayStats {
  std::size_t inserted = 0;
  std::size_t duplicates = 0;
  std::size_t rejected = 0;
  std::size_t degenerate = 0;
  std::size_t conflicts = 0;
  std::size_t iterations = 0;
  WalkStats walk;
};

// Delaunay triangulation of the points (vertex i is points[i]) in BRIO order.
// Throws kDegenerateInput when no enclosing quadruple exists and helpers are
// not allowed.
SphericalMesh DelaunayFromPoints(std::span<const UnitPoint> points,
                                 const DelaunayOptions& options = {},
                                 DelaunayStats* stats = nullptr);

// Inserts vertices [first, mesh.vertices.size()) of a mesh that already
// covers S, in BRIO order.
DelaunayStats InsertVertexRange(SphericalMesh& mesh, VertexId first,
                                const DelaunayOptions& options);

}  // namespace spheremesh
