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

#include "spheremesh/mesh.h"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "spheremesh/error.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

TriId SphericalMesh::AllocateTriangle() {
  if (!free_list.empty()) {
    const TriId t = free_list.back();
    free_list.pop_back();
    return t;
  }
  triangles.emplace_back();
  return static_cast<TriId>(triangles.size() - 1);
}

void SphericalMesh::ReleaseTriangle(TriId t) {
  triangles[t] = Triangle{};
  free_list.push_back(t);
}

std::size_t SphericalMesh::LiveTriangleCount() const {
  return static_cast<std::size_t>(
      std::count_if(triangles.begin(), triangles.end(),
                    [](const Triangle& t) { return t.live(); }));
}

TriId SphericalMesh::AnyLiveTriangle() const {
  for (std::size_t i = triangles.size(); i-- > 0;) {
    if (triangles[i].live()) return static_cast<TriId>(i);
  }
  return kNone;
}

void SphericalMesh::CompactTriangles() {
  std::size_t hole = 0;
  std::size_t tail = triangles.size();
  while (true) {
    while (hole < tail && triangles[hole].live()) ++hole;
    while (tail > hole && !triangles[tail - 1].live()) --tail;
    if (hole + 1 >= tail) break;
    const TriId from = static_cast<TriId>(tail - 1);
    const TriId to = static_cast<TriId>(hole);
    triangles[to] = triangles[from];
    triangles[from] = Triangle{};
    for (TriId nb : triangles[to].n) {
      if (nb == kNone) continue;
      Triangle& other = triangles[nb == from ? to : nb];
      const int k = other.IndexOfNeighbor(from);
      if (k >= 0) other.n[k] = to;
    }
    --tail;
  }
  while (!triangles.empty() && !triangles.back().live()) triangles.pop_back();
  free_list.clear();
}

std::vector<VertexId> SphericalMesh::CompactVertices() {
  const std::vector<std::uint8_t> used = ReferencedVertices(*this);
  std::vector<VertexId> remap(vertices.size(), kNone);
  VertexId next = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (used[i]) {
      remap[i] = next;
      vertices[next++] = vertices[i];
    }
  }
  vertices.resize(next);
  for (Triangle& t : triangles) {
    if (!t.live()) continue;
    for (VertexId& v : t.v) v = remap[v];
  }
  std::vector<VertexId> helpers;
  for (VertexId h : helper_vertices) {
    if (remap[h] != kNone) helpers.push_back(remap[h]);
  }
  helper_vertices = std::move(helpers);
  return remap;
}

bool SphericalMesh::IsHelper(VertexId v) const {
  return std::find(helper_vertices.begin(), helper_vertices.end(), v) !=
         helper_vertices.end();
}

void LinkNeighbors(SphericalMesh& mesh) {
  // (lo, hi, triangle, local edge)
  std::vector<std::tuple<VertexId, VertexId, TriId, int>> edges;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    Triangle& tri = mesh.triangles[t];
    if (!tri.live()) continue;
    for (int e = 0; e < 3; ++e) {
      const VertexId a = tri.v[Next3(e)], b = tri.v[Prev3(e)];
      edges.emplace_back(std::min(a, b), std::max(a, b), static_cast<TriId>(t),
                         e);
      tri.n[e] = kNone;
    }
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); i += 2) {
    if (i + 1 >= edges.size() || std::get<0>(edges[i]) != std::get<0>(edges[i + 1]) ||
        std::get<1>(edges[i]) != std::get<1>(edges[i + 1]) ||
        (i + 2 < edges.size() && std::get<0>(edges[i]) == std::get<0>(edges[i + 2]) &&
         std::get<1>(edges[i]) == std::get<1>(edges[i + 2]))) {
      throw Error(ErrorCode::kContractViolation,
                  "edge not shared by exactly two triangles");
    }
    const auto& [lo, hi, t0, e0] = edges[i];
    const auto& [lo1, hi1, t1, e1] = edges[i + 1];
    mesh.triangles[t0].n[e0] = t1;
    mesh.triangles[t1].n[e1] = t0;
  }
}

std::string StructureReport::Describe() const {
  std::ostringstream os;
  os << "live=" << live_triangles << " asymmetric=" << asymmetric_links
     << " non_positive=" << non_positive << " repeated=" << repeated_vertices;
  return os.str();
}

StructureReport CheckStructure(const SphericalMesh& mesh) {
  StructureReport r;
  const auto& V = mesh.vertices;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const Triangle& t = mesh.triangles[i];
    if (!t.live()) continue;
    ++r.live_triangles;
    if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2]) {
      ++r.repeated_vertices;
      continue;
    }
    if (OrientOrigin(V[t.v[0]], V[t.v[1]], V[t.v[2]]) != Sign::kPositive) {
      ++r.non_positive;
    }
    for (int e = 0; e < 3; ++e) {
      const TriId nb = t.n[e];
      if (nb == kNone || nb >= static_cast<TriId>(mesh.triangles.size()) ||
          !mesh.triangles[nb].live()) {
        ++r.asymmetric_links;
        continue;
      }
      const Triangle& o = mesh.triangles[nb];
      const int k = o.IndexOfNeighbor(static_cast<TriId>(i));
      // The shared edge appears reversed in the neighbour.
      if (k < 0 || o.v[Next3(k)] != t.v[Prev3(e)] ||
          o.v[Prev3(k)] != t.v[Next3(e)]) {
        ++r.asymmetric_links;
      }
    }
  }
  return r;
}

std::vector<std::uint8_t> ReferencedVertices(const SphericalMesh& mesh) {
  std::vector<std::uint8_t> used(mesh.vertices.size(), 0);
  for (const Triangle& t : mesh.triangles) {
    if (!t.live()) continue;
    for (VertexId v : t.v) used[v] = 1;
  }
  return used;
}

std::size_t CountDelaunayViolations(const SphericalMesh& mesh) {
  const std::vector<std::uint8_t> used = ReferencedVertices(mesh);
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) ids.push_back(static_cast<VertexId>(i));
  }
  const auto& V = mesh.vertices;
  std::size_t violations = 0;
  for (const Triangle& t : mesh.triangles) {
    if (!t.live()) continue;
    for (VertexId id : ids) {
      if (id == t.v[0] || id == t.v[1] || id == t.v[2]) continue;
      if (InCircumcircleUnchecked(V[t.v[0]], V[t.v[1]], V[t.v[2]], V[id]) ==
          CircleSide::kInside) {
        ++violations;
      }
    }
  }
  return violations;
}

std::size_t CountLocalDelaunayViolations(const SphericalMesh& mesh,
                                         bool skip_constrained) {
  const auto& V = mesh.vertices;
  std::size_t violations = 0;
  for (const Triangle& t : mesh.triangles) {
    if (!t.live()) continue;
    for (int e = 0; e < 3; ++e) {
      if (skip_constrained && t.IsConstrained(e)) continue;
      const Triangle& o = mesh.triangles[t.n[e]];
      // Opposite vertex of the neighbour: the one not on the shared edge.
      VertexId w = kNone;
      for (VertexId x : o.v) {
        if (x != t.v[Next3(e)] && x != t.v[Prev3(e)]) w = x;
      }
      if (InCircumcircleUnchecked(V[t.v[0]], V[t.v[1]], V[t.v[2]], V[w]) ==
          CircleSide::kInside) {
        ++violations;
      }
    }
  }
  return violations;
}

double TotalArea(const SphericalMesh& mesh) {
  double area = 0.0;
  for (const Triangle& t : mesh.triangles) {
    if (!t.live()) continue;
    area += SphericalTriangleArea(mesh.vertices[t.v[0]], mesh.vertices[t.v[1]],
                                  mesh.vertices[t.v[2]]);
  }
  return area;
}

}  // namespace spheremesh
