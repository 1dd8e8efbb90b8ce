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

#include "spheremesh/kernel.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "spheremesh/error.h"
#include "spheremesh/hilbert.h"
#include "spheremesh/parallel_kernel.h"
#include "spheremesh/predicates.h"
#include "spheremesh/size_field.h"

namespace spheremesh {

void KernelScratch::BeginSearch(std::size_t triangle_slots) {
  if (marks.size() < triangle_slots) {
    marks.resize(triangle_slots + triangle_slots / 4 + 64, 0);
  }
  stamp += 2;
  if (stamp >= 0xfffffff0u) {
    std::fill(marks.begin(), marks.end(), 0u);
    stamp = 2;
  }
}

KernelScratch& ThreadScratch() {
  thread_local KernelScratch scratch;
  return scratch;
}

bool EnclosesOrigin(const Vec3& a, const Vec3& b, const Vec3& c,
                    const Vec3& d) {
  if (Orient3d(a, b, c, d) == Sign::kZero) return false;
  // The origin is strictly inside iff it lies strictly on the same side of
  // every face as the opposite vertex.
  const Vec3* faces[4][4] = {
      {&b, &c, &d, &a}, {&a, &c, &d, &b}, {&a, &b, &d, &c}, {&a, &b, &c, &d}};
  for (const auto& f : faces) {
    const Sign origin_side = OrientOrigin(*f[0], *f[1], *f[2]);
    if (origin_side == Sign::kZero) return false;
    if (origin_side != Orient3d(*f[0], *f[1], *f[2], *f[3])) return false;
  }
  return true;
}

void BootstrapVertices(SphericalMesh& mesh, std::array<VertexId, 4> ids) {
  const auto& V = mesh.vertices;
  if (!EnclosesOrigin(V[ids[0]], V[ids[1]], V[ids[2]], V[ids[3]])) {
    throw Error(ErrorCode::kDegenerateSeed,
                "bootstrap points are coplanar or do not enclose the origin");
  }
  mesh.triangles.clear();
  mesh.free_list.clear();
  const int faces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (const auto& f : faces) {
    Triangle t;
    t.v = {ids[f[0]], ids[f[1]], ids[f[2]]};
    if (OrientOrigin(V[t.v[0]], V[t.v[1]], V[t.v[2]]) != Sign::kPositive) {
      std::swap(t.v[1], t.v[2]);
    }
    mesh.triangles.push_back(t);
  }
  LinkNeighbors(mesh);
}

SphericalMesh Bootstrap(const UnitPoint& p1, const UnitPoint& p2,
                        const UnitPoint& p3, const UnitPoint& p4) {
  SphericalMesh mesh;
  mesh.vertices = {p1, p2, p3, p4};
  BootstrapVertices(mesh, {0, 1, 2, 3});
  return mesh;
}

bool TriangleContains(const SphericalMesh& mesh, TriId t, const Vec3& p) {
  const Triangle& tri = mesh.triangles[t];
  const auto& V = mesh.vertices;
  for (int e = 0; e < 3; ++e) {
    if (OrientOrigin(V[tri.v[Next3(e)]], V[tri.v[Prev3(e)]], p) ==
        Sign::kNegative) {
      return false;
    }
  }
  return true;
}

TriId Walk(const SphericalMesh& mesh, TriId start, const Vec3& p,
           KernelScratch& scratch) {
  ++scratch.walk_stats.walks;
  const auto& V = mesh.vertices;
  TriId t = start;
  TriId prev = kNone;
  const std::size_t budget = 2 * mesh.triangles.size() + 1024;
  for (std::size_t step = 0; step < budget; ++step) {
    const Triangle& tri = mesh.triangles[t];
    // Random first edge: the stochastic walk cannot cycle forever on
    // non-Delaunay (constrained) triangulations.
    const int r = static_cast<int>(scratch.NextRandom() % 3);
    TriId next = kNone;
    for (int k = 0; k < 3; ++k) {
      const int e = (r + k) % 3;
      if (tri.n[e] == prev) continue;
      if (OrientOrigin(V[tri.v[Next3(e)]], V[tri.v[Prev3(e)]], p) ==
          Sign::kNegative) {
        next = tri.n[e];
        break;
      }
    }
    if (next == kNone) {
      scratch.walk_stats.steps += step;
      return t;
    }
    prev = t;
    t = next;
  }
  ++scratch.walk_stats.exhaustive;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    if (mesh.triangles[i].live() &&
        TriangleContains(mesh, static_cast<TriId>(i), p)) {
      return static_cast<TriId>(i);
    }
  }
  throw Error(ErrorCode::kContractViolation,
              "point not covered by the triangulation");
}

TriId Walk(const SphericalMesh& mesh, TriId start, const UnitPoint& p) {
  return Walk(mesh, start, p.vec(), ThreadScratch());
}

InsertStatus BuildCavity(const SphericalMesh& mesh, TriId seed, const Vec3& p,
                         const InsertOptions& options,
                         KernelScratch& scratch) {
  const auto& V = mesh.vertices;
  scratch.BeginSearch(mesh.triangles.size());
  const std::uint32_t inside = scratch.stamp;
  const std::uint32_t outside = scratch.stamp + 1;
  Cavity& cavity = scratch.cavity;
  cavity.triangles.clear();
  cavity.boundary.clear();
  scratch.stack.clear();
  scratch.stack.push_back(seed);
  scratch.marks[seed] = inside;

  // Depth-first growth; circumcircles the point is on count as inside.
  while (!scratch.stack.empty()) {
    const TriId t = scratch.stack.back();
    scratch.stack.pop_back();
    cavity.triangles.push_back(t);
    const Triangle& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const TriId nb = tri.n[e];
      const bool constrained = tri.IsConstrained(e);
      if (!(constrained && options.respect_constraints)) {
        std::uint32_t& mark = scratch.marks[nb];
        if (mark == inside) continue;
        if (mark != outside) {
          const Triangle& o = mesh.triangles[nb];
          if (InCircumcircleUnchecked(V[o.v[0]], V[o.v[1]], V[o.v[2]], p) !=
              CircleSide::kOutside) {
            mark = inside;
            scratch.stack.push_back(nb);
            continue;
          }
          mark = outside;
        }
      }
      cavity.boundary.push_back(
          {tri.v[Next3(e)], tri.v[Prev3(e)], nb,
           static_cast<std::int8_t>(mesh.triangles[nb].IndexOfNeighbor(t)),
           constrained, tri.region});
    }
  }

  for (TriId t : cavity.triangles) {
    for (VertexId v : mesh.triangles[t].v) {
      if (SquaredDistance(V[v], p) < kCoincidentChord2) {
        return InsertStatus::kDuplicate;
      }
    }
  }
  // A triangulated disk with every vertex on its boundary.
  if (cavity.boundary.size() != cavity.triangles.size() + 2) {
    return InsertStatus::kDegenerate;
  }
  scratch.fan.clear();
  for (const BoundaryEdge& be : cavity.boundary) {
    // Blocked constrained edges may lead back into the cavity.
    if (scratch.marks[be.outer] == inside) return InsertStatus::kDegenerate;
    if (OrientOrigin(V[be.a], V[be.b], p) != Sign::kPositive) {
      return InsertStatus::kDegenerate;
    }
    scratch.fan.emplace_back(be.a, 0);
  }
  std::sort(scratch.fan.begin(), scratch.fan.end());
  for (std::size_t i = 1; i < scratch.fan.size(); ++i) {
    if (scratch.fan[i].first == scratch.fan[i - 1].first) {
      return InsertStatus::kDegenerate;
    }
  }
  if (options.filter_field != nullptr) {
    const double limit = options.filter_beta * options.filter_field->Eval(p);
    for (const BoundaryEdge& be : cavity.boundary) {
      if (GeodesicDistance(V[be.a], p) < limit) return InsertStatus::kRejected;
    }
  }
  return InsertStatus::kInserted;
}

TriId ApplyCavity(SphericalMesh& mesh, VertexId v, const Cavity& cavity,
                  std::array<TriId, 2> extra, KernelScratch& scratch) {
  const std::size_t k = cavity.boundary.size();
  scratch.slots.assign(cavity.triangles.begin(), cavity.triangles.end());
  scratch.slots.push_back(extra[0]);
  scratch.slots.push_back(extra[1]);
  scratch.fan.clear();
  for (std::size_t j = 0; j < k; ++j) {
    scratch.fan.emplace_back(cavity.boundary[j].a, static_cast<int>(j));
  }
  std::sort(scratch.fan.begin(), scratch.fan.end());
  auto starting_at = [&](VertexId a) {
    auto it = std::lower_bound(scratch.fan.begin(), scratch.fan.end(),
                               std::make_pair(a, -1));
    return it->second;
  };

  // Ball triangle j is (v, a_j, b_j): n[0] across (a_j, b_j) is the outer
  // triangle, n[1] across (b_j, v) is the ball triangle starting at b_j, and
  // n[2] across (v, a_j) is the one ending at a_j.
  for (std::size_t j = 0; j < k; ++j) {
    const BoundaryEdge& be = cavity.boundary[j];
    const TriId t = scratch.slots[j];
    Triangle& nt = mesh.triangles[t];
    nt = Triangle{};
    nt.v = {v, be.a, be.b};
    nt.n[0] = be.outer;
    nt.n[1] = scratch.slots[starting_at(be.b)];
    nt.constrained = be.constrained ? 1u : 0u;
    nt.region = be.region;
    mesh.triangles[be.outer].n[be.outer_edge] = t;
  }
  for (std::size_t j = 0; j < k; ++j) {
    const TriId t = scratch.slots[j];
    mesh.triangles[mesh.triangles[t].n[1]].n[2] = t;
  }
  return scratch.slots[0];
}

InsertResult InsertVertex(SphericalMesh& mesh, VertexId v, TriId hint,
                          const InsertOptions& options,
                          KernelScratch& scratch) {
  const Vec3 p = mesh.vertices[v].vec();
  const TriId start =
      (hint >= 0 && hint < static_cast<TriId>(mesh.triangles.size()) &&
       mesh.triangles[hint].live())
          ? hint
          : mesh.AnyLiveTriangle();
  const TriId located = Walk(mesh, start, p, scratch);
  const InsertStatus status = BuildCavity(mesh, located, p, options, scratch);
  if (status != InsertStatus::kInserted) return {status, located};
  const std::array<TriId, 2> extra = {mesh.AllocateTriangle(),
                                      mesh.AllocateTriangle()};
  return {status, ApplyCavity(mesh, v, scratch.cavity, extra, scratch)};
}

InsertResult InsertPoint(SphericalMesh& mesh, const UnitPoint& p, TriId hint,
                         const InsertOptions& options) {
  mesh.vertices.push_back(p);
  const VertexId v = static_cast<VertexId>(mesh.vertices.size() - 1);
  const InsertResult r = InsertVertex(mesh, v, hint, options, ThreadScratch());
  if (r.status != InsertStatus::kInserted) mesh.vertices.pop_back();
  return r;
}

namespace {

std::optional<std::array<VertexId, 4>> FindEnclosingQuadruple(
    std::span<const UnitPoint> points) {
  const std::size_t n = points.size();
  auto valid = [&](const std::array<VertexId, 4>& q) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (q[i] == q[j]) return false;
      }
    }
    return EnclosesOrigin(points[q[0]], points[q[1]], points[q[2]],
                          points[q[3]]);
  };
  auto extreme = [&](const Vec3& dir) {
    VertexId best = 0;
    double best_dot = -2.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = Dot(points[i].vec(), dir);
      if (d > best_dot) {
        best_dot = d;
        best = static_cast<VertexId>(i);
      }
    }
    return best;
  };

  // Extremes along the directions of a regular tetrahedron.
  const std::array<VertexId, 4> tetra = {
      extreme({1, 1, 1}), extreme({1, -1, -1}), extreme({-1, 1, -1}),
      extreme({-1, -1, 1})};
  if (valid(tetra)) return tetra;

  const std::array<VertexId, 6> axis = {extreme({1, 0, 0}), extreme({-1, 0, 0}),
                                        extreme({0, 1, 0}), extreme({0, -1, 0}),
                                        extreme({0, 0, 1}), extreme({0, 0, -1})};
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      for (int c = b + 1; c < 6; ++c) {
        for (int d = c + 1; d < 6; ++d) {
          const std::array<VertexId, 4> q = {axis[a], axis[b], axis[c], axis[d]};
          if (valid(q)) return q;
        }
      }
    }
  }

  std::mt19937_64 rng(0xb007ULL);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::array<VertexId, 4> q;
    for (VertexId& id : q) id = static_cast<VertexId>(rng() % n);
    if (valid(q)) return q;
  }
  return std::nullopt;
}

// Appends four vertices enclosing the origin around points that fit in an
// open hemisphere: the antipode of their mean direction and three points on
// a cone just outside the data.
std::array<VertexId, 4> AddHelperVertices(SphericalMesh& mesh,
                                          std::size_t data_count) {
  Vec3 sum{};
  for (std::size_t i = 0; i < data_count; ++i) sum = sum + mesh.vertices[i].vec();
  if (Norm(sum) < 1e-9) {
    throw Error(ErrorCode::kDegenerateInput,
                "points neither enclose the origin nor fit in a hemisphere");
  }
  const UnitPoint c(sum);
  double radius = 0.0;
  for (std::size_t i = 0; i < data_count; ++i) {
    radius = std::max(radius, GeodesicDistance(c, mesh.vertices[i]));
  }
  if (radius > kPi / 2 - 1e-6) {
    throw Error(ErrorCode::kDegenerateInput,
                "points neither enclose the origin nor fit in a hemisphere");
  }
  const double theta = 0.5 * (radius + kPi / 2);
  const Vec3 seed = std::fabs(c.x()) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const UnitPoint u(Cross(c, seed));
  const Vec3 w = Cross(c, u);
  std::array<VertexId, 4> ids;
  mesh.vertices.push_back(UnitPoint(-c.vec()));
  ids[0] = static_cast<VertexId>(mesh.vertices.size() - 1);
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * kPi * k / 3.0;
    mesh.vertices.push_back(UnitPoint(
        std::cos(theta) * c.vec() +
        std::sin(theta) * (std::cos(phi) * u.vec() + std::sin(phi) * w)));
    ids[k + 1] = static_cast<VertexId>(mesh.vertices.size() - 1);
  }
  mesh.helper_vertices.assign(ids.begin(), ids.end());
  return ids;
}

void Accumulate(DelaunayStats& total, const DelaunayStats& part) {
  total.inserted += part.inserted;
  total.duplicates += part.duplicates;
  total.rejected += part.rejected;
  total.degenerate += part.degenerate;
  total.conflicts += part.conflicts;
  total.iterations += part.iterations;
  total.walk.walks += part.walk.walks;
  total.walk.steps += part.walk.steps;
  total.walk.exhaustive += part.walk.exhaustive;
}

// Inserts `ids` (indices relative to `offset`) in BRIO order of their
// points, skipping the excluded ones.
DelaunayStats InsertInBrioOrder(SphericalMesh& mesh, VertexId offset,
                                std::size_t count,
                                std::span<const VertexId> excluded,
                                const DelaunayOptions& options) {
  std::span<const UnitPoint> points(mesh.vertices.data() + offset, count);
  BrioSchedule schedule;
  const std::vector<std::uint32_t> order = BrioOrder(points, &schedule);
  DelaunayStats stats;
  std::vector<VertexId> round;
  for (const IndexRange& r : schedule.rounds) {
    round.clear();
    for (std::size_t i = r.begin; i < r.end; ++i) {
      const VertexId id = offset + static_cast<VertexId>(order[i]);
      if (std::find(excluded.begin(), excluded.end(), id) == excluded.end()) {
        round.push_back(id);
      }
    }
    Accumulate(stats, ParallelInsert(mesh, round, options.threads, options.insert));
  }
  return stats;
}

}  // namespace

SphericalMesh DelaunayFromPoints(std::span<const UnitPoint> points,
                                 const DelaunayOptions& options,
                                 DelaunayStats* stats) {
  if (points.size() < 4) {
    throw Error(ErrorCode::kDegenerateInput, "need at least four points");
  }
  SphericalMesh mesh;
  mesh.vertices.assign(points.begin(), points.end());
  std::optional<std::array<VertexId, 4>> seed = FindEnclosingQuadruple(points);
  if (!seed) {
    if (!options.allow_helper_vertices) {
      throw Error(ErrorCode::kDegenerateInput,
                  "no four input points enclose the origin");
    }
    seed = AddHelperVertices(mesh, points.size());
  }
  BootstrapVertices(mesh, *seed);
  DelaunayStats s = InsertInBrioOrder(mesh, 0, points.size(), *seed, options);
  s.inserted += mesh.helper_vertices.empty() ? 4 : 0;
  if (stats != nullptr) *stats = s;
  return mesh;
}

DelaunayStats InsertVertexRange(SphericalMesh& mesh, VertexId first,
                                const DelaunayOptions& options) {
  const std::size_t count = mesh.vertices.size() - static_cast<std::size_t>(first);
  if (count == 0) return {};
  return InsertInBrioOrder(mesh, first, count, {}, options);
}

}  // namespace spheremesh
