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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "spheremesh/geomodel.h"
#include "spheremesh/geometry.h"
#include "spheremesh/mesh.h"
#include "spheremesh/size_field.h"

namespace spheremesh {

inline constexpr double kDefaultDensityEps = 0.05;
inline constexpr int kMaxDensityDepth = 32;

// Piecewise-linear primitive delta(t) of the density rho(u) = L / h(x(u))
// along an edge, t in [0, 1]. delta(0) = 0 and delta(1) is the edge length
// in units of h.
struct DensityTable {
  std::vector<double> t;
  std::vector<double> delta;
  std::size_t evaluations = 0;  // calls to h
  bool max_depth_reached = false;

  std::size_t size() const { return t.size(); }
  double total() const { return delta.empty() ? 0.0 : delta.back(); }
  // Linear interpolation of the table.
  double DeltaAt(double u) const;
};

// Adaptive trapezoidal construction for an edge of length `length` whose
// size along the parameter is h_of_u(u). An interval [u1, u2] is bisected
// while the density at its midpoint differs from the mean of the end
// densities by more than eps relative to that mean. Bisection stops at depth
// kMaxDensityDepth, which sets max_depth_reached.
DensityTable BuildDensityTable(double length,
                               const std::function<double(double)>& h_of_u,
                               double eps = kDefaultDensityEps);

// Same along the edge pq: x(u) is the chord point p(1-u) + qu projected on
// S and L the geodesic length of pq.
DensityTable BuildDensityTable(const UnitPoint& p, const UnitPoint& q,
                               const SizeField& h,
                               double eps = kDefaultDensityEps);

// Adimensional length delta(1) of the edge pq.
double AdimensionalLength(const UnitPoint& p, const UnitPoint& q,
                          const SizeField& h, double eps = kDefaultDensityEps);

// N = ceil(delta(1)), at least 1.
std::size_t SubdivisionCount(const DensityTable& table);

// Parameters t_1 .. t_{n-1} with delta(t_j) = j delta(1) / n, by inverse
// interpolation of the table. n defaults to SubdivisionCount.
std::vector<double> Subdivide(const DensityTable& table);
std::vector<double> Subdivide(const DensityTable& table, std::size_t n);

// Boundary points and constrained edges produced from a coarse domain.
struct BoundaryDiscretization {
  std::vector<UnitPoint> points;
  std::vector<std::pair<VertexId, VertexId>> edges;  // water on the left
  std::vector<std::pair<std::size_t, std::size_t>> loops;  // point ranges
};

// Resamples every loop with equal adimensional spacing: the density tables
// of its arcs are chained into one primitive D over the loop, which is split
// into max(3, ceil(D)) equal parts.
BoundaryDiscretization DiscretizeBoundary(const CoarseDomain& domain,
                                          const SizeField& h,
                                          double eps = kDefaultDensityEps,
                                          int threads = 1);

// A triangulation of S in which given edges are present and flagged.
struct ConstrainedMesh {
  SphericalMesh mesh;
  std::vector<std::pair<VertexId, VertexId>> constraints;
  std::size_t recovery_flips = 0;
  std::size_t delaunay_flips = 0;
};

struct EmptyMeshOptions {
  int threads = 1;
};

// Delaunay triangulation of the points (with auxiliary vertices when they
// fit in a hemisphere), recovery of every constrained edge by flips, then
// flips restoring the constrained Delaunay property. Throws kRecoveryStall
// when an edge cannot be recovered.
ConstrainedMesh BuildEmptyMesh(std::span<const UnitPoint> points,
                               std::span<const std::pair<VertexId, VertexId>> edges,
                               const EmptyMeshOptions& options = {});

// Recovers the constrained edges in an existing triangulation and flags
// them. Returns the number of flips.
std::size_t RecoverEdges(SphericalMesh& mesh,
                         std::span<const std::pair<VertexId, VertexId>> edges);

// Flips of unconstrained, locally non-Delaunay edges until none is
// left. Returns the number of flips.
std::size_t RestoreDelaunay(SphericalMesh& mesh);

// Flips the edge opposite v[e] of triangle t. Returns false, doing nothing,
// if the edge is constrained or the quadrilateral is not strictly convex.
bool FlipEdge(SphericalMesh& mesh, TriId t, int e);

// Marks as water the triangles reachable from the seeds without crossing a
// constrained edge, every other triangle as land. Throws kSeedNotFound if
// no seed is given.
void TagWater(SphericalMesh& mesh, std::span<const UnitPoint> seeds);

}  // namespace spheremesh
