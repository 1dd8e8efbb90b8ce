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
#include <string>
#include <vector>

#include "spheremesh/geometry.h"

namespace spheremesh {

using VertexId = std::int32_t;
using TriId = std::int32_t;
inline constexpr std::int32_t kNone = -1;

enum class Region : std::uint8_t { kUnknown = 0, kWater = 1, kLand = 2 };

// Triangle soup entry. Vertices are positively oriented; n[i] is the
// neighbour across the edge (v[i+1], v[i+2]) opposite v[i]. Bit i of
// `constrained` marks that same edge as a constrained (boundary) edge.
struct Triangle {
  std::array<VertexId, 3> v{kNone, kNone, kNone};
  std::array<TriId, 3> n{kNone, kNone, kNone};
  std::uint8_t constrained = 0;
  Region region = Region::kUnknown;

  bool live() const { return v[0] != kNone; }
  bool IsConstrained(int e) const { return (constrained >> e) & 1u; }
  void SetConstrained(int e, bool on) {
    constrained = on ? (constrained | (1u << e)) : (constrained & ~(1u << e));
  }
  int IndexOfVertex(VertexId id) const {
    return v[0] == id ? 0 : v[1] == id ? 1 : v[2] == id ? 2 : -1;
  }
  int IndexOfNeighbor(TriId t) const {
    return n[0] == t ? 0 : n[1] == t ? 1 : n[2] == t ? 2 : -1;
  }
};

inline constexpr int Next3(int i) { return i == 2 ? 0 : i + 1; }
inline constexpr int Prev3(int i) { return i == 0 ? 2 : i - 1; }

// Triangulation of the whole sphere. Vertices may exist that no triangle
// references (rejected duplicates, filtered candidates) until CompactVertices.
struct SphericalMesh {
  std::vector<UnitPoint> vertices;
  std::vector<Triangle> triangles;
  std::vector<TriId> free_list;
  // Auxiliary vertices added to enclose the origin when the input does not.
  std::vector<VertexId> helper_vertices;

  TriId AllocateTriangle();
  void ReleaseTriangle(TriId t);
  std::size_t LiveTriangleCount() const;
  TriId AnyLiveTriangle() const;

  // Moves live triangles into dead slots so that the array holds exactly the
  // live triangles; clears the free list.
  void CompactTriangles();
  // Drops vertices no triangle references, keeping relative order. Returns the
  // old-to-new index map (kNone for dropped vertices).
  std::vector<VertexId> CompactVertices();

  bool IsHelper(VertexId v) const;
};

// Sets all neighbour links by matching shared edges. Throws
// kContractViolation if an edge is not shared by exactly two triangles.
void LinkNeighbors(SphericalMesh& mesh);

struct StructureReport {
  std::size_t live_triangles = 0;
  std::size_t asymmetric_links = 0;
  std::size_t non_positive = 0;
  std::size_t repeated_vertices = 0;
  bool ok() const {
    return asymmetric_links == 0 && non_positive == 0 && repeated_vertices == 0;
  }
  std::string Describe() const;
};

StructureReport CheckStructure(const SphericalMesh& mesh);

// Exhaustive empty-circumcircle check against every referenced vertex;
// quadratic, meant for meshes of a few thousand vertices.
std::size_t CountDelaunayViolations(const SphericalMesh& mesh);

// Local check: for each edge, the opposite vertex of the neighbour lies
// outside or on the circumcircle. Equivalent to the global property for a
// triangulation of the sphere. Constrained edges are skipped when asked.
std::size_t CountLocalDelaunayViolations(const SphericalMesh& mesh,
                                         bool skip_constrained = false);

double TotalArea(const SphericalMesh& mesh);

std::vector<std::uint8_t> ReferencedVertices(const SphericalMesh& mesh);

}  // namespace spheremesh
