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

#include "spheremesh/geomodel.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "spheremesh/error.h"
#include "spheremesh/kernel.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

void PolylineSet::AddLine(std::span<const UnitPoint> points, bool closed,
                          std::string tag) {
  std::vector<UnitPoint> kept;
  kept.reserve(points.size());
  for (const UnitPoint& p : points) {
    if (kept.empty() || !(kept.back() == p)) kept.push_back(p);
  }
  if (closed) {
    while (kept.size() > 1 && kept.back() == kept.front()) kept.pop_back();
    if (kept.size() < 3) closed = false;
  }
  if (kept.size() < 2) return;
  Polyline line;
  line.closed = closed;
  line.tag = std::move(tag);
  for (const UnitPoint& p : kept) {
    line.points.push_back(static_cast<std::uint32_t>(pool.size()));
    pool.push_back(p);
  }
  lines.push_back(std::move(line));
}

std::vector<UnitPoint> PolylineSet::Points(const Polyline& line) const {
  std::vector<UnitPoint> out;
  out.reserve(line.points.size());
  for (std::uint32_t i : line.points) out.push_back(pool[i]);
  return out;
}

std::size_t PolylineSet::SegmentCount() const {
  std::size_t n = 0;
  for (const Polyline& l : lines) n += l.points.size() - (l.closed ? 0 : 1);
  return n;
}

std::size_t PolylineSet::PointCount() const {
  std::size_t n = 0;
  for (const Polyline& l : lines) n += l.points.size();
  return n;
}

namespace {

UnitPoint Slerp(const Vec3& a, const Vec3& b, double t) {
  const double omega = GeodesicDistance(a, b);
  const double s = std::sin(omega);
  if (s < 1e-15) return UnitPoint((1.0 - t) * a + t * b);
  return UnitPoint((std::sin((1.0 - t) * omega) / s) * a +
                   (std::sin(t * omega) / s) * b);
}

// Appends the interior points of arc ab, subdivided until every sub-arc is
// shorter than h at its midpoint.
void SplitArc(const UnitPoint& a, const UnitPoint& b, const SizeField& h,
              int depth, std::vector<UnitPoint>& out) {
  const double length = GeodesicDistance(a, b);
  const double hm = h.Eval(ChordPoint(a, b, 0.5));
  if (length < hm || depth > 40) return;
  const int k = static_cast<int>(std::floor(length / hm)) + 1;
  UnitPoint prev = a;
  for (int i = 1; i <= k; ++i) {
    const UnitPoint next = i == k ? b : Slerp(a, b, static_cast<double>(i) / k);
    SplitArc(prev, next, h, depth + 1, out);
    if (i < k) out.push_back(next);
    prev = next;
  }
}

using RPoint = bg::model::point<double, 3, bg::cs::cartesian>;
using RBox = bg::model::box<RPoint>;
using RSegment = std::pair<RBox, std::size_t>;

// Box containing the minor arc ab: the chord's box grown by the sagitta.
RBox ArcBox(const Vec3& a, const Vec3& b) {
  const double half = 0.5 * GeodesicDistance(a, b);
  const double pad = (1.0 - std::cos(half)) + 1e-12;
  return RBox(RPoint(std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad,
                     std::min(a.z, b.z) - pad),
              RPoint(std::max(a.x, b.x) + pad, std::max(a.y, b.y) + pad,
                     std::max(a.z, b.z) + pad));
}

struct Segment {
  std::size_t loop;
  std::size_t index;  // arc from point index to index + 1 (cyclic)
  Vec3 a, b;
};

std::vector<Segment> LoopSegments(const PolylineSet& loops) {
  std::vector<Segment> segments;
  for (std::size_t l = 0; l < loops.lines.size(); ++l) {
    const Polyline& line = loops.lines[l];
    const std::size_t m = line.points.size();
    const std::size_t count = line.closed ? m : m - 1;
    for (std::size_t i = 0; i < count; ++i) {
      segments.push_back({l, i, loops.pool[line.points[i]].vec(),
                          loops.pool[line.points[(i + 1) % m]].vec()});
    }
  }
  return segments;
}

bool Adjacent(const PolylineSet& loops, const Segment& s, const Segment& t) {
  if (s.loop != t.loop) return false;
  const Polyline& line = loops.lines[s.loop];
  const std::size_t m = line.points.size();
  if (s.index == t.index) return true;
  if (s.index + 1 == t.index || t.index + 1 == s.index) return true;
  return line.closed && ((s.index + 1) % m == t.index || (t.index + 1) % m == s.index);
}

// Pairs of intersecting non-adjacent segments.
std::vector<std::pair<std::size_t, std::size_t>> IntersectingPairs(
    const PolylineSet& loops, const std::vector<Segment>& segments) {
  std::vector<RSegment> boxes;
  boxes.reserve(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    boxes.emplace_back(ArcBox(segments[i].a, segments[i].b), i);
  }
  bgi::rtree<RSegment, bgi::rstar<16>> tree(boxes.begin(), boxes.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<RSegment> hits;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    hits.clear();
    tree.query(bgi::intersects(boxes[i].first), std::back_inserter(hits));
    for (const RSegment& hit : hits) {
      const std::size_t j = hit.second;
      if (j <= i || Adjacent(loops, segments[i], segments[j])) continue;
      if (ArcsIntersect(segments[i].a, segments[i].b, segments[j].a,
                        segments[j].b)) {
        pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

}  // namespace

PolylineSet RefineInputEdges(const PolylineSet& lines, const SizeField& h) {
  PolylineSet out;
  std::vector<UnitPoint> refined;
  for (const Polyline& line : lines.lines) {
    refined.clear();
    const std::size_t m = line.points.size();
    const std::size_t count = line.closed ? m : m - 1;
    for (std::size_t i = 0; i < m; ++i) {
      const UnitPoint& a = lines.pool[line.points[i]];
      refined.push_back(a);
      if (i < count) {
        SplitArc(a, lines.pool[line.points[(i + 1) % m]], h, 0, refined);
      }
    }
    out.AddLine(refined, line.closed, line.tag);
  }
  return out;
}

SphericalMesh TriangulatePolylines(const PolylineSet& lines, int threads) {
  DelaunayOptions options;
  options.threads = threads;
  options.allow_helper_vertices = true;
  return DelaunayFromPoints(lines.pool, options);
}

std::vector<std::uint8_t> FloodFillWater(const SphericalMesh& mesh,
                                         std::span<const UnitPoint> seeds,
                                         const SizeField& h) {
  if (seeds.empty()) {
    throw Error(ErrorCode::kSeedNotFound, "no water seed given");
  }
  const auto& V = mesh.vertices;
  std::vector<std::uint8_t> fill(mesh.triangles.size(), 0);
  std::vector<TriId> stack;
  for (const UnitPoint& seed : seeds) {
    TriId start;
    try {
      start = Walk(mesh, mesh.AnyLiveTriangle(), seed);
    } catch (const Error&) {
      throw Error(ErrorCode::kSeedNotFound, "water seed could not be located");
    }
    if (fill[start]) continue;
    fill[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const TriId t = stack.back();
      stack.pop_back();
      const Triangle& tri = mesh.triangles[t];
      for (int e = 0; e < 3; ++e) {
        const TriId nb = tri.n[e];
        if (fill[nb]) continue;
        const UnitPoint& a = V[tri.v[Next3(e)]];
        const UnitPoint& b = V[tri.v[Prev3(e)]];
        if (GeodesicDistance(a, b) < h.Eval(ChordPoint(a, b, 0.5))) continue;
        fill[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  return fill;
}

double GeodesicDiameter(std::span<const UnitPoint> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      d = std::max(d, GeodesicDistance(points[i], points[j]));
    }
  }
  return d;
}

double SignedLoopArea(std::span<const UnitPoint> loop) {
  Vec3 sum{};
  for (const UnitPoint& p : loop) sum = sum + p.vec();
  const Vec3 c = UnitPoint(sum).vec();
  double area = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a = loop[i];
    const Vec3& b = loop[(i + 1) % loop.size()];
    area += Dot(Cross(c, a), b);
  }
  return area;
}

CoarseDomain ExtractCoarseBoundary(const SphericalMesh& mesh,
                                   std::span<const std::uint8_t> fill,
                                   const SizeField& h,
                                   std::span<const UnitPoint> seeds,
                                   ExtractStats* stats) {
  const auto in_fill = [&](TriId t) { return fill[t] != 0; };
  // Boundary arcs as (triangle, edge) of fill triangles facing non-fill.
  std::vector<std::pair<TriId, int>> arcs;
  bool any = false;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (!mesh.triangles[t].live() || !fill[t]) continue;
    any = true;
    for (int e = 0; e < 3; ++e) {
      if (!in_fill(mesh.triangles[t].n[e])) {
        arcs.emplace_back(static_cast<TriId>(t), e);
      }
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyFill, "flood fill reached nothing");
  std::sort(arcs.begin(), arcs.end());
  auto arc_id = [&](TriId t, int e) {
    return static_cast<std::size_t>(
        std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(t, e)) -
        arcs.begin());
  };

  // The arc of fill triangle t opposite v[e], walked with the fill on its
  // left, runs from v[e+2] to v[e+1]. From its end x, rotate around x
  // through fill triangles to the next boundary arc leaving x.
  auto next_arc = [&](TriId t, int e) {
    TriId cur = t;
    int i = Next3(e);
    const VertexId x = mesh.triangles[t].v[i];
    for (std::size_t guard = 0; guard < mesh.triangles.size(); ++guard) {
      const Triangle& tri = mesh.triangles[cur];
      const int g = Next3(i);
      const TriId nb = tri.n[g];
      if (!in_fill(nb)) return arc_id(cur, g);
      i = mesh.triangles[nb].IndexOfVertex(x);
      cur = nb;
    }
    throw Error(ErrorCode::kContractViolation, "broken fill boundary");
  };

  CoarseDomain domain;
  domain.water_seeds.assign(seeds.begin(), seeds.end());
  ExtractStats local;
  std::vector<std::uint8_t> used(arcs.size(), 0);
  std::vector<UnitPoint> loop;
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    if (used[start]) continue;
    loop.clear();
    std::size_t a = start;
    while (!used[a]) {
      used[a] = 1;
      const auto [t, e] = arcs[a];
      loop.push_back(mesh.vertices[mesh.triangles[t].v[Prev3(e)]]);
      a = next_arc(t, e);
    }
    ++local.loops_found;
    Vec3 sum{};
    for (const UnitPoint& p : loop) sum = sum + p.vec();
    const double limit = h.Eval(UnitPoint(sum));
    // The loop stays within 2 r of its first point, r the largest distance
    // from that point; only loops with r < limit can be small.
    double reach = 0.0;
    for (const UnitPoint& p : loop) reach = std::max(reach, GeodesicDistance(loop[0], p));
    const bool small = reach < limit && GeodesicDiameter(loop) < limit;
    if (small && SignedLoopArea(loop) < 0.0) {
      ++local.islands_removed;
      continue;
    }
    domain.boundary.AddLine(loop, true, "loop" + std::to_string(local.loops_found));
  }
  if (stats != nullptr) *stats = local;
  return domain;
}

std::size_t CountBoundaryIntersections(const PolylineSet& loops) {
  return IntersectingPairs(loops, LoopSegments(loops)).size();
}

CoarseDomain InsetBoundary(const CoarseDomain& domain, const SizeField& h,
                           double fraction) {
  if (fraction == 0.0) return domain;
  const PolylineSet& in = domain.boundary;
  // Unit inward direction and full shift per pool point.
  std::vector<Vec3> direction(in.pool.size());
  std::vector<double> shift(in.pool.size(), 0.0);
  for (const Polyline& line : in.lines) {
    const std::size_t m = line.points.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3& p = in.pool[line.points[i]];
      const bool has_prev = line.closed || i > 0;
      const bool has_next = line.closed || i + 1 < m;
      Vec3 n{};
      // Water lies on the left of each arc a->b, towards a x b.
      if (has_prev) {
        const Vec3& a = in.pool[line.points[(i + m - 1) % m]];
        n = n + UnitPoint(Cross(a, p)).vec();
      }
      if (has_next) {
        const Vec3& b = in.pool[line.points[(i + 1) % m]];
        n = n + UnitPoint(Cross(p, b)).vec();
      }
      Vec3 d = n - Dot(n, p) * p;
      if (Norm(d) < 1e-12) {
        // Hairpin: the two normals cancel; move along the reversed tangent.
        const Vec3& b = in.pool[line.points[(i + 1) % m]];
        d = p - b;
        d = d - Dot(d, p) * p;
      }
      direction[line.points[i]] = UnitPoint(d).vec();
      shift[line.points[i]] = fraction * h.Eval(p);
    }
  }

  CoarseDomain out = domain;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    for (std::size_t k = 0; k < in.pool.size(); ++k) {
      const Vec3& p = in.pool[k];
      out.boundary.pool[k] = UnitPoint(std::cos(shift[k]) * p +
                                       std::sin(shift[k]) * direction[k]);
    }
    const std::vector<Segment> segments = LoopSegments(out.boundary);
    const auto pairs = IntersectingPairs(out.boundary, segments);
    if (pairs.empty()) return out;
    if (attempt == 5) break;
    for (const auto& [i, j] : pairs) {
      for (const Segment* s : {&segments[i], &segments[j]}) {
        const Polyline& line = out.boundary.lines[s->loop];
        const std::size_t m = line.points.size();
        shift[line.points[s->index]] *= 0.5;
        shift[line.points[(s->index + 1) % m]] *= 0.5;
      }
    }
  }
  throw Error(ErrorCode::kInsetCollision,
              "inset boundary still intersects after halving the shifts");
}

CoarsenResult Coarsen(const PolylineSet& raw, std::span<const UnitPoint> seeds,
                      const SizeField& h, double inset_fraction, int threads) {
  CoarsenResult r;
  r.refined_input = RefineInputEdges(raw, h);
  r.all_points = TriangulatePolylines(r.refined_input, threads);
  r.fill = FloodFillWater(r.all_points, seeds, h);
  r.raw_boundary =
      ExtractCoarseBoundary(r.all_points, r.fill, h, seeds, &r.extract);
  r.domain = InsetBoundary(r.raw_boundary, h, inset_fraction);
  return r;
}

}  // namespace spheremesh
