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
#include <string>
#include <utility>
#include <vector>

#include "spheremesh/kernel.h"
#include "spheremesh/mesh.h"
#include "spheremesh/one_dim.h"
#include "spheremesh/size_field.h"

namespace spheremesh {

struct Candidate {
  UnitPoint p;
  TriId hint = kNone;  // a triangle next to the edge the point came from
};

// Subdivision points of every unconstrained edge of the water triangles with
// adimensional length above one. Each edge is visited once; output order
// depends only on the mesh.
std::vector<Candidate> SaturateEdges(const SphericalMesh& mesh,
                                     const SizeField& h,
                                     double eps = kDefaultDensityEps,
                                     int threads = 1);

struct FilterOptions {
  double beta = 0.7;
  int threads = 1;
};

// Hilbert-sorts the candidates and inserts them without crossing constrained
// edges, rejecting a point whenever a vertex of its cavity is closer than
// beta * h(p). Unused vertices are dropped afterwards; constraint vertex
// pairs are renumbered to match.
DelaunayStats FilteredInsert(ConstrainedMesh& state,
                             std::span<const Candidate> candidates,
                             const SizeField& h,
                             const FilterOptions& options = {});

struct IterationStats {
  std::size_t iteration = 0;
  std::size_t candidates = 0;
  std::size_t inserted = 0;
  std::size_t rejected = 0;  // filtered, duplicate or degenerate
  double seconds = 0.0;
  std::string ToJson() const;
};

struct RefineOptions {
  double eps = kDefaultDensityEps;
  double beta = 0.7;
  int max_iter = 30;
  int threads = 1;
  // Called after every iteration.
  std::function<void(const IterationStats&)> on_iteration;
};

struct RefineResult {
  std::vector<IterationStats> iterations;
  bool converged = false;  // false: max_iter reached while still inserting
  std::size_t total_inserted() const;
};

// Saturate, sort and insert until an iteration inserts nothing.
RefineResult RefineLoop(ConstrainedMesh& state, const SizeField& h,
                        const RefineOptions& options = {});

struct SmoothOptions {
  int passes = 3;
  int threads = 1;
};

struct SmoothStats {
  std::size_t moved = 0;     // accepted moves over all passes
  std::size_t refused = 0;   // moves refused by the orientation or angle test
  std::size_t flips = 0;     // Delaunay flips afterwards
};

// Laplacian smoothing of interior water vertices: each pass moves every
// unconstrained, water-only vertex towards the normalized sum of its one-ring.
// A move is kept only if its triangles stay positive and the sum of their
// smallest angles does not drop. Unconstrained edges are then flipped back to
// Delaunay.
SmoothStats Smooth(ConstrainedMesh& state, const SmoothOptions& options = {});

// Smallest corner angle of the spherical triangle, in radians.
double MinAngle(const Vec3& a, const Vec3& b, const Vec3& c);

struct EdgeLengthReport {
  std::size_t edges = 0;
  std::size_t in_band = 0;     // adimensional length in [0.4, 1.5]
  std::size_t below_two = 0;   // adimensional length <= 2
  double min = 0.0;
  double max = 0.0;
  double mean_min_angle = 0.0;  // over water triangles, radians
  double band_fraction() const {
    return edges == 0 ? 1.0 : static_cast<double>(in_band) / edges;
  }
};

// Adimensional lengths of all edges of water triangles.
EdgeLengthReport MeasureEdges(const SphericalMesh& mesh, const SizeField& h,
                              double eps = kDefaultDensityEps, int threads = 1);

}  // namespace spheremesh
