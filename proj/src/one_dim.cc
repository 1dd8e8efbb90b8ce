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

#include "spheremesh/one_dim.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "spheremesh/error.h"
#include "spheremesh/kernel.h"
#include "spheremesh/parallel.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

double DensityTable::DeltaAt(double u) const {
  if (t.empty()) return 0.0;
  if (u <= t.front()) return delta.front();
  if (u >= t.back()) return delta.back();
  const auto it = std::upper_bound(t.begin(), t.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
  const double w = (u - t[k]) / (t[k + 1] - t[k]);
  return delta[k] + w * (delta[k + 1] - delta[k]);
}

DensityTable BuildDensityTable(double length,
                               const std::function<double(double)>& h_of_u,
                               double eps) {
  if (!(length > 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::kContractViolation,
                "density table needs a positive length and eps");
  }
  DensityTable table;
  auto rho = [&](double u) {
    const double h = h_of_u(u);
    ++table.evaluations;
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw Error(ErrorCode::kContractViolation, "size field must be positive");
    }
    return length / h;
  };

  struct Interval {
    double u1, u2, r1, r2;
    int depth;
  };
  std::vector<Interval> stack;
  stack.push_back({0.0, 1.0, rho(0.0), rho(1.0), 0});
  table.t.push_back(0.0);
  table.delta.push_back(0.0);
  // Left halves are pushed last, so intervals are accepted left to right.
  while (!stack.empty()) {
    const Interval in = stack.back();
    stack.pop_back();
    const double um = 0.5 * (in.u1 + in.u2);
    const double rm = rho(um);
    const double mean = 0.5 * (in.r1 + in.r2);
    if (std::fabs(rm - mean) > eps * mean) {
      if (in.depth < kMaxDensityDepth) {
        stack.push_back({um, in.u2, rm, in.r2, in.depth + 1});
        stack.push_back({in.u1, um, in.r1, rm, in.depth + 1});
        continue;
      }
      table.max_depth_reached = true;
    }
    table.t.push_back(in.u2);
    table.delta.push_back(table.delta.back() + (in.u2 - in.u1) * mean);
  }
  return table;
}

DensityTable BuildDensityTable(const UnitPoint& p, const UnitPoint& q,
                               const SizeField& h, double eps) {
  if (p == q) {
    throw Error(ErrorCode::kContractViolation, "density table of a zero edge");
  }
  return BuildDensityTable(
      GeodesicDistance(p, q),
      [&](double u) { return h.Eval(ChordPoint(p, q, u)); }, eps);
}

double AdimensionalLength(const UnitPoint& p, const UnitPoint& q,
                          const SizeField& h, double eps) {
  return BuildDensityTable(p, q, h, eps).total();
}

std::size_t SubdivisionCount(const DensityTable& table) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(table.total())));
}

std::vector<double> Subdivide(const DensityTable& table) {
  return Subdivide(table, SubdivisionCount(table));
}

std::vector<double> Subdivide(const DensityTable& table, std::size_t n) {
  std::vector<double> out;
  if (n < 2 || table.size() < 2) return out;
  out.reserve(n - 1);
  const double total = table.total();
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(n);
    while (k + 2 < table.size() && table.delta[k + 1] < target) ++k;
    const double w =
        (target - table.delta[k]) / (table.delta[k + 1] - table.delta[k]);
    out.push_back(table.t[k] + w * (table.t[k + 1] - table.t[k]));
  }
  return out;
}

BoundaryDiscretization DiscretizeBoundary(const CoarseDomain& domain,
                                          const SizeField& h, double eps,
                                          int threads) {
  const PolylineSet& set = domain.boundary;
  struct Arc {
    UnitPoint a, b;
  };
  std::vector<Arc> arcs;
  std::vector<std::size_t> first_arc;
  for (const Polyline& line : set.lines) {
    first_arc.push_back(arcs.size());
    const std::size_t m = line.points.size();
    const std::size_t count = line.closed ? m : m - 1;
    for (std::size_t i = 0; i < count; ++i) {
      arcs.push_back({set.pool[line.points[i]], set.pool[line.points[(i + 1) % m]]});
    }
  }
  first_arc.push_back(arcs.size());

  std::vector<DensityTable> tables(arcs.size());
  ParallelFor(arcs.size(), threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t i = begin; i < end; ++i) {
      tables[i] = BuildDensityTable(arcs[i].a, arcs[i].b, h, eps);
    }
  });

  BoundaryDiscretization out;
  for (std::size_t l = 0; l < set.lines.size(); ++l) {
    const bool closed = set.lines[l].closed;
    const std::size_t a0 = first_arc[l], a1 = first_arc[l + 1];
    std::vector<double> prefix{0.0};
    for (std::size_t i = a0; i < a1; ++i) prefix.push_back(prefix.back() + tables[i].total());
    const double total = prefix.back();
    const std::size_t n = std::max<std::size_t>(
        closed ? 3 : 1, static_cast<std::size_t>(std::ceil(total)));
    const std::size_t start = out.points.size();
    const std::size_t count = closed ? n : n + 1;
    std::size_t k = 0;
    for (std::size_t j = 0; j < count; ++j) {
      const double target = total * static_cast<double>(j) / static_cast<double>(n);
      while (k + 1 < a1 - a0 && prefix[k + 1] <= target) ++k;
      if (j == 0) {
        out.points.push_back(arcs[a0].a);
        continue;
      }
      if (!closed && j == n) {
        out.points.push_back(arcs[a1 - 1].b);
        continue;
      }
      // Invert the arc's table at the local target.
      const DensityTable& table = tables[a0 + k];
      const double local = target - prefix[k];
      std::size_t s = 0;
      while (s + 2 < table.size() && table.delta[s + 1] < local) ++s;
      const double w = std::clamp(
          (local - table.delta[s]) / (table.delta[s + 1] - table.delta[s]), 0.0, 1.0);
      const double u = table.t[s] + w * (table.t[s + 1] - table.t[s]);
      out.points.push_back(u == 0.0 ? arcs[a0 + k].a
                                    : ChordPoint(arcs[a0 + k].a, arcs[a0 + k].b, u));
    }
    const std::size_t end = out.points.size();
    for (std::size_t j = start; j + 1 < end; ++j) {
      out.edges.emplace_back(static_cast<VertexId>(j), static_cast<VertexId>(j + 1));
    }
    if (closed) {
      out.edges.emplace_back(static_cast<VertexId>(end - 1),
                             static_cast<VertexId>(start));
    }
    out.loops.emplace_back(start, end);
  }
  return out;
}

bool FlipEdge(SphericalMesh& mesh, TriId t, int e) {
  auto& T = mesh.triangles;
  if (T[t].IsConstrained(e)) return false;
  const TriId nb = T[t].n[e];
  const int j = T[nb].IndexOfNeighbor(t);
  const VertexId w = T[t].v[e], u = T[t].v[Next3(e)], v = T[t].v[Prev3(e)];
  const VertexId x = T[nb].v[j];
  const auto& V = mesh.vertices;
  if (w == x) return false;
  if (OrientOrigin(V[w], V[u], V[x]) != Sign::kPositive ||
      OrientOrigin(V[x], V[v], V[w]) != Sign::kPositive) {
    return false;
  }
  const TriId a = T[t].n[Next3(e)], b = T[t].n[Prev3(e)];
  const TriId c = T[nb].n[Next3(j)], d = T[nb].n[Prev3(j)];
  const bool ca = T[t].IsConstrained(Next3(e)), cb = T[t].IsConstrained(Prev3(e));
  const bool cc = T[nb].IsConstrained(Next3(j)), cd = T[nb].IsConstrained(Prev3(j));

  Triangle& nt = T[t];
  nt.v = {w, u, x};
  nt.n = {c, nb, b};
  nt.constrained = 0;
  nt.SetConstrained(0, cc);
  nt.SetConstrained(2, cb);
  Triangle& nn = T[nb];
  nn.v = {x, v, w};
  nn.n = {a, t, d};
  nn.constrained = 0;
  nn.SetConstrained(0, ca);
  nn.SetConstrained(2, cd);
  T[a].n[T[a].IndexOfNeighbor(t)] = nb;
  T[c].n[T[c].IndexOfNeighbor(nb)] = t;
  return true;
}

namespace {

std::vector<TriId> VertexTriangles(const SphericalMesh& mesh) {
  std::vector<TriId> vt(mesh.vertices.size(), kNone);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (!mesh.triangles[t].live()) continue;
    for (VertexId v : mesh.triangles[t].v) vt[v] = static_cast<TriId>(t);
  }
  return vt;
}

// Triangle around a holding edge (a, b), with the index of the edge in it.
bool FindEdge(const SphericalMesh& mesh, const std::vector<TriId>& vt,
              VertexId a, VertexId b, TriId* out_t, int* out_e) {
  const TriId t0 = vt[a];
  if (t0 == kNone) return false;
  TriId t = t0;
  for (std::size_t guard = 0; guard < mesh.triangles.size(); ++guard) {
    const Triangle& tri = mesh.triangles[t];
    const int i = tri.IndexOfVertex(a);
    if (tri.v[Next3(i)] == b) {
      *out_t = t;
      *out_e = Prev3(i);
      return true;
    }
    if (tri.v[Prev3(i)] == b) {
      *out_t = t;
      *out_e = Next3(i);
      return true;
    }
    t = tri.n[Prev3(i)];
    if (t == t0) return false;
  }
  return false;
}

void MarkConstrained(SphericalMesh& mesh, TriId t, int e) {
  Triangle& tri = mesh.triangles[t];
  tri.SetConstrained(e, true);
  Triangle& nb = mesh.triangles[tri.n[e]];
  nb.SetConstrained(nb.IndexOfNeighbor(t), true);
}

[[noreturn]] void Stall(VertexId a, VertexId b, const char* why) {
  throw Error(ErrorCode::kRecoveryStall, "edge " + std::to_string(a) + "-" +
                                             std::to_string(b) + ": " + why);
}

// Edges crossed by the arc a -> b, in order, as vertex pairs (left, right).
std::deque<std::pair<VertexId, VertexId>> CrossingEdges(
    const SphericalMesh& mesh, const std::vector<TriId>& vt, VertexId a,
    VertexId b) {
  const auto& V = mesh.vertices;
  const auto& T = mesh.triangles;
  const TriId t0 = vt[a];
  TriId t = t0;
  TriId start = kNone;
  for (std::size_t guard = 0; guard < T.size(); ++guard) {
    const Triangle& tri = T[t];
    const int i = tri.IndexOfVertex(a);
    const VertexId u = tri.v[Next3(i)], w = tri.v[Prev3(i)];
    const Sign su = OrientOrigin(V[a], V[u], V[b]);
    const Sign sw = OrientOrigin(V[w], V[a], V[b]);
    if (su == Sign::kPositive && sw == Sign::kPositive) {
      start = t;
      break;
    }
    if (su == Sign::kZero && Dot(V[u], V[b]) > Dot(V[a], V[b]) &&
        Dot(V[a], V[u]) > Dot(V[a], V[b])) {
      Stall(a, b, "passes through another vertex");
    }
    t = tri.n[Prev3(i)];
    if (t == t0) break;
  }
  if (start == kNone) Stall(a, b, "no triangle around the start vertex");

  std::deque<std::pair<VertexId, VertexId>> crossing;
  const Triangle& st = T[start];
  const int i = st.IndexOfVertex(a);
  VertexId left = st.v[Next3(i)], right = st.v[Prev3(i)];
  t = st.n[i];
  crossing.emplace_back(left, right);
  for (std::size_t guard = 0; guard < T.size(); ++guard) {
    const Triangle& tri = T[t];
    // Third vertex of t, opposite the edge (left, right).
    VertexId y = kNone;
    for (VertexId q : tri.v) {
      if (q != left && q != right) y = q;
    }
    if (y == b) return crossing;
    const Sign s = OrientOrigin(V[a], V[b], V[y]);
    if (s == Sign::kZero) Stall(a, b, "passes through another vertex");
    TriId next;
    if (s == Sign::kNegative) {
      // y left of a -> b: the arc leaves through (y, right).
      next = tri.n[tri.IndexOfVertex(left)];
      left = y;
    } else {
      next = tri.n[tri.IndexOfVertex(right)];
      right = y;
    }
    crossing.emplace_back(left, right);
    t = next;
  }
  Stall(a, b, "crossing walk did not reach the end vertex");
}

bool Crosses(const SphericalMesh& mesh, VertexId a, VertexId b, VertexId c,
             VertexId d) {
  if (c == a || c == b || d == a || d == b) return false;
  const auto& V = mesh.vertices;
  const Sign sc = OrientOrigin(V[a], V[b], V[c]);
  const Sign sd = OrientOrigin(V[a], V[b], V[d]);
  return sc != Sign::kZero && sd == -sc;
}

}  // namespace

std::size_t RecoverEdges(SphericalMesh& mesh,
                         std::span<const std::pair<VertexId, VertexId>> edges) {
  std::vector<TriId> vt = VertexTriangles(mesh);
  std::size_t flips = 0;
  for (const auto& [a, b] : edges) {
    if (a == b || a < 0 || b < 0 ||
        static_cast<std::size_t>(std::max(a, b)) >= mesh.vertices.size()) {
      throw Error(ErrorCode::kContractViolation, "bad constrained edge");
    }
    if (vt[a] == kNone || vt[b] == kNone) {
      Stall(a, b, "endpoint is not in the triangulation");
    }
    TriId t;
    int e;
    if (!FindEdge(mesh, vt, a, b, &t, &e)) {
      auto crossing = CrossingEdges(mesh, vt, a, b);
      const std::size_t budget = std::max<std::size_t>(1, crossing.size() * crossing.size());
      std::size_t local = 0;
      std::size_t idle = 0;
      while (!crossing.empty()) {
        const auto [u, w] = crossing.front();
        crossing.pop_front();
        TriId ct;
        int ce;
        if (!FindEdge(mesh, vt, u, w, &ct, &ce)) Stall(a, b, "lost a crossing edge");
        if (mesh.triangles[ct].IsConstrained(ce)) {
          Stall(a, b, "crosses another constrained edge");
        }
        const TriId nb = mesh.triangles[ct].n[ce];
        if (!FlipEdge(mesh, ct, ce)) {
          crossing.emplace_back(u, w);
          if (++idle > crossing.size()) Stall(a, b, "no convex quadrilateral left");
          continue;
        }
        idle = 0;
        ++local;
        if (local > budget) Stall(a, b, "flip budget exhausted");
        for (VertexId v : mesh.triangles[ct].v) vt[v] = ct;
        for (VertexId v : mesh.triangles[nb].v) vt[v] = nb;
        // New diagonal is (v[0], v[2]) of ct, i.e. (w', x).
        const VertexId c = mesh.triangles[ct].v[0], d = mesh.triangles[ct].v[2];
        if (Crosses(mesh, a, b, c, d)) crossing.emplace_back(c, d);
      }
      flips += local;
      if (!FindEdge(mesh, vt, a, b, &t, &e)) Stall(a, b, "edge missing after flips");
    }
    MarkConstrained(mesh, t, e);
  }
  return flips;
}

std::size_t RestoreDelaunay(SphericalMesh& mesh) {
  auto& T = mesh.triangles;
  const auto& V = mesh.vertices;
  std::vector<std::pair<TriId, int>> stack;
  for (std::size_t t = 0; t < T.size(); ++t) {
    if (!T[t].live()) continue;
    for (int e = 0; e < 3; ++e) stack.emplace_back(static_cast<TriId>(t), e);
  }
  std::size_t flips = 0;
  while (!stack.empty()) {
    const auto [t, e] = stack.back();
    stack.pop_back();
    const Triangle& tri = T[t];
    if (tri.IsConstrained(e)) continue;
    const Triangle& nb = T[tri.n[e]];
    const VertexId x = nb.v[nb.IndexOfNeighbor(t)];
    if (InCircumcircleUnchecked(V[tri.v[0]], V[tri.v[1]], V[tri.v[2]], V[x]) !=
        CircleSide::kInside) {
      continue;
    }
    const TriId other = tri.n[e];
    if (!FlipEdge(mesh, t, e)) continue;
    ++flips;
    stack.emplace_back(t, 0);
    stack.emplace_back(t, 2);
    stack.emplace_back(other, 0);
    stack.emplace_back(other, 2);
  }
  return flips;
}

ConstrainedMesh BuildEmptyMesh(std::span<const UnitPoint> points,
                               std::span<const std::pair<VertexId, VertexId>> edges,
                               const EmptyMeshOptions& options) {
  DelaunayOptions delaunay;
  delaunay.threads = options.threads;
  delaunay.allow_helper_vertices = true;
  ConstrainedMesh out;
  out.mesh = DelaunayFromPoints(points, delaunay);
  out.constraints.assign(edges.begin(), edges.end());
  out.recovery_flips = RecoverEdges(out.mesh, edges);
  out.delaunay_flips = RestoreDelaunay(out.mesh);
  return out;
}

void TagWater(SphericalMesh& mesh, std::span<const UnitPoint> seeds) {
  if (seeds.empty()) throw Error(ErrorCode::kSeedNotFound, "no water seed given");
  for (Triangle& t : mesh.triangles) {
    if (t.live()) t.region = Region::kLand;
  }
  std::vector<TriId> stack;
  for (const UnitPoint& seed : seeds) {
    TriId start;
    try {
      start = Walk(mesh, mesh.AnyLiveTriangle(), seed);
    } catch (const Error&) {
      throw Error(ErrorCode::kSeedNotFound, "water seed could not be located");
    }
    if (mesh.triangles[start].region == Region::kWater) continue;
    mesh.triangles[start].region = Region::kWater;
    stack.push_back(start);
    while (!stack.empty()) {
      const TriId t = stack.back();
      stack.pop_back();
      for (int e = 0; e < 3; ++e) {
        const Triangle& tri = mesh.triangles[t];
        if (tri.IsConstrained(e)) continue;
        const TriId nb = tri.n[e];
        if (mesh.triangles[nb].region == Region::kWater) continue;
        mesh.triangles[nb].region = Region::kWater;
        stack.push_back(nb);
      }
    }
  }
}

}  // namespace spheremesh
