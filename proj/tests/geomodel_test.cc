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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "fixtures.h"
#include "spheremesh/error.h"
#include "spheremesh/kernel.h"
#include "spheremesh/predicates.h"

namespace spheremesh {
namespace {

using testing::CircleRing;
using testing::LL;
using testing::Radians;
using testing::TwoBasinRing;

double Degrees(double rad) { return rad * 180.0 / kPi; }

std::vector<UnitPoint> Reversed(std::vector<UnitPoint> ring) {
  std::reverse(ring.begin(), ring.end());
  return ring;
}

TEST(PolylineSetTest, AddLineNormalizesRepeats) {
  PolylineSet set;
  const UnitPoint a = LL(0, 0), b = LL(1, 0), c = LL(1, 1);
  set.AddLine(std::vector<UnitPoint>{a, a, b, c, a}, true, "ring");
  ASSERT_EQ(set.lines.size(), 1u);
  EXPECT_EQ(set.lines[0].points.size(), 3u);
  EXPECT_TRUE(set.lines[0].closed);
  set.AddLine(std::vector<UnitPoint>{a, b, a}, true, "thin");
  EXPECT_FALSE(set.lines[1].closed);
  set.AddLine(std::vector<UnitPoint>{c, c}, false, "dot");
  EXPECT_EQ(set.lines.size(), 2u);
  EXPECT_EQ(set.SegmentCount(), 3u + 1u);
  EXPECT_EQ(set.PointCount(), 5u);
  EXPECT_EQ(set.Points(set.lines[0]).front(), a);
}

TEST(RefineInputEdgesTest, ShortSegmentUnchanged) {
  PolylineSet set;
  set.AddLine(std::vector<UnitPoint>{LL(0, 0), LL(0.3, 0)}, false);
  const PolylineSet out = RefineInputEdges(set, SizeField::Uniform(Radians(1.0)));
  EXPECT_EQ(out.PointCount(), 2u);
}

TEST(RefineInputEdgesTest, LongSegmentSplitsIntoEqualArcs) {
  PolylineSet set;
  set.AddLine(std::vector<UnitPoint>{LL(0, 0), LL(2.5, 0)}, false);
  const PolylineSet out = RefineInputEdges(set, SizeField::Uniform(Radians(1.0)));
  const std::vector<UnitPoint> pts = out.Points(out.lines[0]);
  ASSERT_EQ(pts.size(), 4u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_NEAR(Degrees(GeodesicDistance(pts[i - 1], pts[i])), 2.5 / 3, 1e-12);
  }
  EXPECT_EQ(pts.front(), set.pool[0]);
  EXPECT_EQ(pts.back(), set.pool[1]);
}

TEST(RefineInputEdgesTest, AllEdgesShorterThanRampField) {
  PolylineSet set;
  set.AddLine(CircleRing(0, 0, 20, 9), true);
  set.AddLine(std::vector<UnitPoint>{LL(-40, -30), LL(40, 30), LL(60, -10)}, false);
  const auto coast = std::make_shared<const CoastIndex>(std::vector<UnitPoint>{LL(0, 0)});
  const SizeField h = SizeField::DistanceRamp(Radians(0.5), Radians(4), 0, Radians(40), coast);
  const PolylineSet out = RefineInputEdges(set, h);
  for (const Polyline& line : out.lines) {
    const std::size_t m = line.points.size();
    for (std::size_t i = 0; i + (line.closed ? 0 : 1) < m; ++i) {
      const UnitPoint& a = out.pool[line.points[i]];
      const UnitPoint& b = out.pool[line.points[(i + 1) % m]];
      EXPECT_LT(GeodesicDistance(a, b), h(ChordPoint(a, b, 0.5)));
    }
  }
}

// Annulus sea between circles of radius 5 and 15 degrees around lon 0 lat 0.
struct Annulus {
  PolylineSet raw;
  SizeField h = SizeField::Uniform(Radians(2.0));
  std::vector<UnitPoint> seeds{LL(0, 10)};
  Annulus() {
    raw.AddLine(CircleRing(0, 0, 5, 100), true, "inner");
    raw.AddLine(CircleRing(0, 0, 15, 300), true, "outer");
  }
};

TEST(FloodFillWaterTest, AnnulusFillsOnlyTheAnnulus) {
  const Annulus a;
  const SphericalMesh mesh = TriangulatePolylines(a.raw);
  const std::vector<std::uint8_t> fill = FloodFillWater(mesh, a.seeds, a.h);
  const UnitPoint center = LL(0, 0);
  std::size_t filled = 0;
  for (TriId t = 0; t < static_cast<TriId>(mesh.triangles.size()); ++t) {
    const Triangle& tri = mesh.triangles[t];
    if (!tri.live()) continue;
    const UnitPoint c(mesh.vertices[tri.v[0]].vec() + mesh.vertices[tri.v[1]].vec() +
                      mesh.vertices[tri.v[2]].vec());
    const double r = Degrees(GeodesicDistance(c, center));
    if (fill[t]) {
      ++filled;
      EXPECT_GT(r, 5.0 - 0.1);
      EXPECT_LT(r, 15.0 + 0.1);
    } else if (r > 5.1 && r < 14.9) {
      ADD_FAILURE() << "annulus triangle not filled at r=" << r;
    }
  }
  EXPECT_GT(filled, 300u);
}

TEST(FloodFillWaterTest, ChannelWidthDecidesConnectivity) {
  const SizeField h = SizeField::Uniform(Radians(1.0));
  const std::vector<UnitPoint> seeds{LL(-8, 0)};
  for (double width : {0.3, 3.0}) {
    PolylineSet raw;
    raw.AddLine(TwoBasinRing(5, 8, width, 0.1), true);
    const SphericalMesh mesh = TriangulatePolylines(raw);
    const std::vector<std::uint8_t> fill = FloodFillWater(mesh, seeds, h);
    const TriId other = Walk(mesh, mesh.AnyLiveTriangle(), LL(8, 0));
    EXPECT_EQ(fill[other] != 0, width > 1.0) << "width " << width;
  }
}

TEST(FloodFillWaterTest, MissingSeed) {
  const Annulus a;
  const SphericalMesh mesh = TriangulatePolylines(a.raw);
  try {
    FloodFillWater(mesh, {}, a.h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSeedNotFound);
  }
}

TEST(ExtractCoarseBoundaryTest, AnnulusGivesTwoOppositeLoops) {
  const Annulus a;
  const CoarsenResult r = Coarsen(a.raw, a.seeds, a.h, 0.0);
  ASSERT_EQ(r.raw_boundary.boundary.lines.size(), 2u);
  double signs[2];
  for (int i = 0; i < 2; ++i) {
    const auto& line = r.raw_boundary.boundary.lines[i];
    EXPECT_TRUE(line.closed);
    signs[i] = SignedLoopArea(r.raw_boundary.boundary.Points(line));
  }
  EXPECT_LT(signs[0] * signs[1], 0.0);
  EXPECT_EQ(CountBoundaryIntersections(r.raw_boundary.boundary), 0u);
}

TEST(ExtractCoarseBoundaryTest, SphereMinusIslandGivesOneLoop) {
  PolylineSet raw;
  raw.AddLine(CircleRing(40, 10, 3, 60), true, "island");
  const SizeField h = SizeField::Uniform(Radians(1.0));
  const std::vector<UnitPoint> seeds{LL(-140, -10)};
  const SphericalMesh mesh = TriangulatePolylines(raw);
  const std::vector<std::uint8_t> fill = FloodFillWater(mesh, seeds, h);
  ExtractStats stats;
  const CoarseDomain d = ExtractCoarseBoundary(mesh, fill, h, seeds, &stats);
  ASSERT_EQ(d.boundary.lines.size(), 1u);
  EXPECT_EQ(d.boundary.lines[0].points.size(), 60u);
  // Water outside: the loop runs clockwise around the island.
  EXPECT_LT(SignedLoopArea(d.boundary.Points(d.boundary.lines[0])), 0.0);
  EXPECT_EQ(stats.islands_removed, 0u);
}

TEST(ExtractCoarseBoundaryTest, SmallIslandIsRemoved) {
  PolylineSet raw;
  raw.AddLine(CircleRing(0, 0, 10, 400), true, "sea");
  raw.AddLine(CircleRing(2, 2, 0.2, 12), true, "islet");  // diameter 0.4 h
  const CoarsenResult r =
      Coarsen(raw, std::vector<UnitPoint>{LL(-3, -3)}, SizeField::Uniform(Radians(1.0)));
  EXPECT_EQ(r.extract.islands_removed, 1u);
  EXPECT_EQ(r.domain.boundary.lines.size(), 1u);
}

TEST(ExtractCoarseBoundaryTest, EmptyFill) {
  const Annulus a;
  const SphericalMesh mesh = TriangulatePolylines(a.raw);
  const std::vector<std::uint8_t> none(mesh.triangles.size(), 0);
  try {
    ExtractCoarseBoundary(mesh, none, a.h, a.seeds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyFill);
  }
}

CoarseDomain Domain(std::vector<std::vector<UnitPoint>> loops) {
  CoarseDomain d;
  for (const auto& loop : loops) d.boundary.AddLine(loop, true);
  return d;
}

TEST(InsetBoundaryTest, CapBoundaryMovesInwardByATenth) {
  const double h = Radians(1.0);
  const CoarseDomain cap = Domain({CircleRing(0, 0, 10, 200)});
  const CoarseDomain inset = InsetBoundary(cap, SizeField::Uniform(h), 0.1);
  ASSERT_EQ(inset.boundary.pool.size(), 200u);
  for (const UnitPoint& p : inset.boundary.pool) {
    EXPECT_NEAR(GeodesicDistance(p, LL(0, 0)), Radians(10) - 0.1 * h, 1e-12);
  }
}

TEST(InsetBoundaryTest, ZeroFractionIsIdentity) {
  const CoarseDomain cap = Domain({CircleRing(0, 0, 10, 50)});
  const CoarseDomain same = InsetBoundary(cap, SizeField::Uniform(0.1), 0.0);
  EXPECT_EQ(same.boundary.pool, cap.boundary.pool);
}

TEST(InsetBoundaryTest, CloseIslandsNeverCross) {
  // Two island loops (water outside) 0.15 h apart; full shifts would overlap.
  const double h = 1.0;
  const CoarseDomain d = Domain({Reversed(CircleRing(-2.075, 0, 2, 120)),
                                 Reversed(CircleRing(2.075, 0, 2, 120))});
  ASSERT_LT(SignedLoopArea(d.boundary.Points(d.boundary.lines[0])), 0.0);
  try {
    const CoarseDomain inset = InsetBoundary(d, SizeField::Uniform(Radians(h)), 0.1);
    EXPECT_EQ(CountBoundaryIntersections(inset.boundary), 0u);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsetCollision);
  }
}

TEST(CountBoundaryIntersectionsTest, FigureEight) {
  const std::vector<UnitPoint> eight{LL(0, 0), LL(2, 2), LL(2, 0), LL(0, 2)};
  EXPECT_EQ(CountBoundaryIntersections(Domain({eight}).boundary), 1u);
  const std::vector<UnitPoint> square{LL(0, 0), LL(2, 0), LL(2, 2), LL(0, 2)};
  EXPECT_EQ(CountBoundaryIntersections(Domain({square}).boundary), 0u);
}

TEST(GeometryHelpersTest, DiameterAndOrientation) {
  const std::vector<UnitPoint> ring = CircleRing(30, 30, 4, 64);
  EXPECT_NEAR(GeodesicDiameter(ring), Radians(8), 1e-12);
  EXPECT_GT(SignedLoopArea(ring), 0.0);
  EXPECT_LT(SignedLoopArea(Reversed(ring)), 0.0);
}

TEST(CoarsenTest, OpenChannelKeepsOneLoopWithoutIntersections) {
  PolylineSet raw;
  raw.AddLine(TwoBasinRing(5, 8, 3, 0.1), true);
  const CoarsenResult r = Coarsen(raw, std::vector<UnitPoint>{LL(-8, 0)},
                                  SizeField::Uniform(Radians(1.0)));
  EXPECT_EQ(r.domain.boundary.lines.size(), 1u);
  EXPECT_EQ(CountBoundaryIntersections(r.domain.boundary), 0u);
  EXPECT_GT(SignedLoopArea(r.domain.boundary.Points(r.domain.boundary.lines[0])), 0.0);
}

}  // namespace
}  // namespace spheremesh
