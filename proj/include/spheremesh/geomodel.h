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

#include "spheremesh/geometry.h"
#include "spheremesh/mesh.h"
#include "spheremesh/size_field.h"

namespace spheremesh {

struct Polyline {
  std::vector<std::uint32_t> points;  // indices into PolylineSet::pool
  bool closed = false;
  std::string tag;
};

struct PolylineSet {
  std::vector<UnitPoint> pool;
  std::vector<Polyline> lines;

  // Appends a line, dropping consecutive repeated points (and the closing
  // repeat of a closed ring). A closed line left with fewer than 3 points
  // becomes open; a line left with fewer than 2 points is not added.
  void AddLine(std::span<const UnitPoint> points, bool closed,
               std::string tag = {});
  std::vector<UnitPoint> Points(const Polyline& line) const;
  std::size_t SegmentCount() const;
  std::size_t PointCount() const;
};

// Coarse boundary of the water region: closed loops, water on the left
// (counter-clockwise seen from outside the sphere around water), each loop
// owning its own points.
struct CoarseDomain {
  PolylineSet boundary;
  std::vector<UnitPoint> water_seeds;
};

// Subdivides every segment longer than h at its midpoint into
// floor(L / h) + 1 equal great-circle sub-arcs, repeating on sub-arcs that
// are still too long where h varies. Original points are kept.
PolylineSet RefineInputEdges(const PolylineSet& lines, const SizeField& h);

// Triangulation of all polyline points (repeated points are absorbed,
// auxiliary vertices added for regional data).
SphericalMesh TriangulatePolylines(const PolylineSet& lines, int threads = 1);

// Per-triangle membership of the region reachable from the seeds' triangles
// without crossing an edge whose geodesic length is below h at its midpoint.
// Throws kSeedNotFound when no seed is given or one cannot be located.
std::vector<std::uint8_t> FloodFillWater(const SphericalMesh& mesh,
                                         std::span<const UnitPoint> seeds,
                                         const SizeField& h);

struct ExtractStats {
  std::size_t loops_found = 0;
  std::size_t islands_removed = 0;
};

// Boundary loops of the filled triangles, water on the left. Loops of
// geodesic diameter below h around a non-water region (islands) are
// dropped. Throws kEmptyFill for an empty fill.
CoarseDomain ExtractCoarseBoundary(const SphericalMesh& mesh,
                                   std::span<const std::uint8_t> fill,
                                   const SizeField& h,
                                   std::span<const UnitPoint> seeds,
                                   ExtractStats* stats = nullptr);

// Moves each boundary point by fraction * h into the water along the
// bisector of the adjacent edge normals. Shifts of points on intersecting
// arcs are halved up to five times; kInsetCollision if arcs still intersect.
CoarseDomain InsetBoundary(const CoarseDomain& domain, const SizeField& h,
                           double fraction = 0.1);

// Number of pairs of non-adjacent boundary arcs that intersect, over all
// loops.
std::size_t CountBoundaryIntersections(const PolylineSet& loops);

// Geodesic diameter of a point set (exact, quadratic).
double GeodesicDiameter(std::span<const UnitPoint> points);

// Twice the signed area enclosed by a small closed loop around its
// centroid: positive when the loop runs counter-clockwise seen from outside.
double SignedLoopArea(std::span<const UnitPoint> loop);

struct CoarsenResult {
  PolylineSet refined_input;
  SphericalMesh all_points;
  std::vector<std::uint8_t> fill;
  CoarseDomain raw_boundary;
  CoarseDomain domain;  // inset
  ExtractStats extract;
};

// Steps from raw coastlines to the inset coarse domain.
CoarsenResult Coarsen(const PolylineSet& raw, std::span<const UnitPoint> seeds,
                      const SizeField& h, double inset_fraction = 0.1,
                      int threads = 1);

}  // namespace spheremesh
