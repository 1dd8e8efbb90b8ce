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

#include "spheremesh/refine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "spheremesh/hilbert.h"
#include "spheremesh/parallel.h"
#include "spheremesh/parallel_kernel.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

namespace {

// Chunks for data-parallel loops over triangles; results are concatenated in
// chunk order, so they do not depend on the thread count.
constexpr std::size_t kChunk = 4096;

bool IsWater(const SphericalMesh& mesh, TriId t) {
  return mesh.triangles[t].region == Region::kWater;
}

// True if (t, e) is the representative of its edge among water triangles.
bool OwnsWaterEdge(const SphericalMesh& mesh, TriId t, int e) {
  const TriId nb = mesh.triangles[t].n[e];
  return !IsWater(mesh, nb) || t < nb;
}

}  // namespace

std::vector<Candidate> SaturateEdges(const SphericalMesh& mesh,
                                     const SizeField& h, double eps,
                                     int threads) {
  const std::size_t n = mesh.triangles.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<Candidate>> parts(chunks);
  ParallelFor(chunks, threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t c = begin; c < end; ++c) {
      auto& out = parts[c];
      for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
        const TriId t = static_cast<TriId>(i);
        const Triangle& tri = mesh.triangles[t];
        if (!tri.live() || tri.region != Region::kWater) continue;
        for (int e = 0; e < 3; ++e) {
          if (tri.IsConstrained(e) || !OwnsWaterEdge(mesh, t, e)) continue;
          const UnitPoint& p = mesh.vertices[tri.v[Next3(e)]];
          const UnitPoint& q = mesh.vertices[tri.v[Prev3(e)]];
          const DensityTable table = BuildDensityTable(p, q, h, eps);
          if (table.total() <= 1.0) continue;
          for (double u : Subdivide(table)) out.push_back({ChordPoint(p, q, u), t});
        }
      }
    }
  });
  std::vector<Candidate> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return all;
}

DelaunayStats FilteredInsert(ConstrainedMesh& state,
                             std::span<const Candidate> candidates,
                             const SizeField& h, const FilterOptions& options) {
  SphericalMesh& mesh = state.mesh;
  std::vector<UnitPoint> points;
  points.reserve(candidates.size());
  for (const Candidate& c : candidates) points.push_back(c.p);
  const std::vector<std::uint32_t> sorted = HilbertSort(points);

  const VertexId base = static_cast<VertexId>(mesh.vertices.size());
  mesh.vertices.insert(mesh.vertices.end(), points.begin(), points.end());
  std::vector<VertexId> order;
  std::vector<TriId> hints;
  order.reserve(sorted.size());
  hints.reserve(sorted.size());
  for (std::uint32_t i : sorted) {
    order.push_back(base + static_cast<VertexId>(i));
    hints.push_back(candidates[i].hint);
  }

  InsertOptions insert;
  insert.respect_constraints = true;
  insert.filter_field = &h;
  insert.filter_beta = options.beta;
  const DelaunayStats stats =
      ParallelInsert(mesh, order, options.threads, insert, hints);

  const std::vector<VertexId> remap = mesh.CompactVertices();
  for (auto& [a, b] : state.constraints) {
    a = remap[a];
    b = remap[b];
  }
  return stats;
}

std::string IterationStats::ToJson() const {
  nlohmann::json j;
  j["iteration"] = iteration;
  j["candidates"] = candidates;
  j["inserted"] = inserted;
  j["rejected"] = rejected;
  j["seconds"] = seconds;
  return j.dump();
}

std::size_t RefineResult::total_inserted() const {
  std::size_t n = 0;
  for (const IterationStats& s : iterations) n += s.inserted;
  return n;
}

RefineResult RefineLoop(ConstrainedMesh& state, const SizeField& h,
                        const RefineOptions& options) {
  RefineResult result;
  FilterOptions filter;
  filter.beta = options.beta;
  filter.threads = options.threads;
  for (int it = 1; it <= options.max_iter; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    IterationStats s;
    s.iteration = static_cast<std::size_t>(it);
    const std::vector<Candidate> candidates =
        SaturateEdges(state.mesh, h, options.eps, options.threads);
    s.candidates = candidates.size();
    if (!candidates.empty()) {
      const DelaunayStats d = FilteredInsert(state, candidates, h, filter);
      s.inserted = d.inserted;
      s.rejected = d.rejected + d.duplicates + d.degenerate;
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.iterations.push_back(s);
    if (options.on_iteration) options.on_iteration(s);
    if (s.inserted == 0) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double MinAngle(const Vec3& a, const Vec3& b, const Vec3& c) {
  auto corner = [](const Vec3& p, const Vec3& q, const Vec3& r) {
    const Vec3 tq = q - Dot(p, q) * p;
    const Vec3 tr = r - Dot(p, r) * p;
    return std::atan2(Norm(Cross(tq, tr)), Dot(tq, tr));
  };
  return std::min({corner(a, b, c), corner(b, c, a), corner(c, a, b)});
}

SmoothStats Smooth(ConstrainedMesh& state, const SmoothOptions& options) {
  SphericalMesh& mesh = state.mesh;
  auto& V = mesh.vertices;
  const auto& T = mesh.triangles;
  const std::size_t nv = V.size();

  // Incident triangles per vertex, compressed rows.
  std::vector<std::size_t> offset(nv + 1, 0);
  std::vector<std::uint8_t> movable(nv, 1);
  for (const Triangle& t : T) {
    if (!t.live()) continue;
    for (int i = 0; i < 3; ++i) {
      ++offset[t.v[i] + 1];
      if (t.region != Region::kWater) movable[t.v[i]] = 0;
      if (t.IsConstrained(i)) movable[t.v[Next3(i)]] = movable[t.v[Prev3(i)]] = 0;
    }
  }
  for (VertexId hv : mesh.helper_vertices) movable[hv] = 0;
  for (std::size_t i = 0; i < nv; ++i) offset[i + 1] += offset[i];
  std::vector<TriId> incident(offset[nv]);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t t = 0; t < T.size(); ++t) {
      if (!T[t].live()) continue;
      for (VertexId v : T[t].v) incident[fill[v]++] = static_cast<TriId>(t);
    }
  }
  auto quality = [&](VertexId v) {
    double q = 0.0;
    for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) {
      const Triangle& t = T[incident[k]];
      q += MinAngle(V[t.v[0]], V[t.v[1]], V[t.v[2]]);
    }
    return q;
  };
  auto positive = [&](VertexId v) {
    for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) {
      const Triangle& t = T[incident[k]];
      if (OrientOrigin(V[t.v[0]], V[t.v[1]], V[t.v[2]]) != Sign::kPositive) {
        return false;
      }
    }
    return true;
  };

  SmoothStats stats;
  std::vector<UnitPoint> proposal(nv);
  for (int pass = 0; pass < options.passes; ++pass) {
    ParallelFor(nv, options.threads, [&](std::size_t begin, std::size_t end, int) {
      for (std::size_t v = begin; v < end; ++v) {
        if (!movable[v] || offset[v] == offset[v + 1]) continue;
        Vec3 sum{};
        for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) {
          const Triangle& t = T[incident[k]];
          const int i = t.IndexOfVertex(static_cast<VertexId>(v));
          sum = sum + V[t.v[Next3(i)]].vec() + V[t.v[Prev3(i)]].vec();
        }
        proposal[v] = UnitPoint(sum);
      }
    });
    std::size_t moved = 0;
    for (std::size_t i = 0; i < nv; ++i) {
      const VertexId v = static_cast<VertexId>(i);
      if (!movable[v] || offset[v] == offset[v + 1]) continue;
      if (SquaredDistance(proposal[v], V[v]) < 1e-30) continue;
      const UnitPoint old = V[v];
      const double before = quality(v);
      V[v] = proposal[v];
      if (positive(v) && quality(v) >= before) {
        ++moved;
      } else {
        V[v] = old;
        ++stats.refused;
      }
    }
    stats.moved += moved;
    if (moved == 0) break;
  }
  stats.flips = RestoreDelaunay(mesh);
  return stats;
}

EdgeLengthReport MeasureEdges(const SphericalMesh& mesh, const SizeField& h,
                              double eps, int threads) {
  const std::size_t n = mesh.triangles.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  struct Partial {
    std::size_t edges = 0, in_band = 0, below_two = 0, triangles = 0;
    double min = std::numeric_limits<double>::infinity(), max = 0.0, angle = 0.0;
  };
  std::vector<Partial> parts(chunks);
  ParallelFor(chunks, threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t c = begin; c < end; ++c) {
      Partial& p = parts[c];
      for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
        const TriId t = static_cast<TriId>(i);
        const Triangle& tri = mesh.triangles[t];
        if (!tri.live() || tri.region != Region::kWater) continue;
        ++p.triangles;
        p.angle += MinAngle(mesh.vertices[tri.v[0]], mesh.vertices[tri.v[1]],
                            mesh.vertices[tri.v[2]]);
        for (int e = 0; e < 3; ++e) {
          if (!OwnsWaterEdge(mesh, t, e)) continue;
          const double d =
              BuildDensityTable(mesh.vertices[tri.v[Next3(e)]],
                                mesh.vertices[tri.v[Prev3(e)]], h, eps)
                  .total();
          ++p.edges;
          if (d >= 0.4 && d <= 1.5) ++p.in_band;
          if (d <= 2.0) ++p.below_two;
          p.min = std::min(p.min, d);
          p.max = std::max(p.max, d);
        }
      }
    }
  });
  EdgeLengthReport r;
  Partial total;
  for (const Partial& p : parts) {
    total.edges += p.edges;
    total.in_band += p.in_band;
    total.below_two += p.below_two;
    total.triangles += p.triangles;
    total.angle += p.angle;
    total.min = std::min(total.min, p.min);
    total.max = std::max(total.max, p.max);
  }
  r.edges = total.edges;
  r.in_band = total.in_band;
  r.below_two = total.below_two;
  r.min = total.edges == 0 ? 0.0 : total.min;
  r.max = total.max;
  r.mean_min_angle = total.triangles == 0 ? 0.0 : total.angle / total.triangles;
  return r;
}

}  // namespace spheremesh
