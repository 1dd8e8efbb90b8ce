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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spheremesh/geometry.h"
#include "spheremesh/mesh.h"

namespace spheremesh {

// Flat mesh for output: unit-sphere coordinates, triangles tagged water or
// land, and boundary (constrained) edges directed with water on the left.
struct MeshOutput {
  std::vector<UnitPoint> vertices;
  std::vector<std::array<VertexId, 3>> triangles;
  std::vector<Region> regions;  // one per triangle
  std::vector<std::pair<VertexId, VertexId>> boundary;

  LonLat lonlat(std::size_t i) const;
};

// Water triangles (and land ones with keep_land) with the vertices they use,
// renumbered in their original order.
MeshOutput MakeMeshOutput(const SphericalMesh& mesh, bool keep_land = false);

enum class MeshFormat { kMsh, kVtk };

// From the file extension (.msh or .vtk); kConfigError otherwise.
MeshFormat MeshFormatFromPath(const std::string& path);

// Gmsh MSH 4.1 ASCII: surface 1 water, surface 2 land, curve 1 boundary.
void WriteMsh(const MeshOutput& mesh, std::ostream& out);
// Legacy VTK ASCII unstructured grid with a "region" cell array
// (1 water, 2 land, 3 boundary line).
void WriteVtk(const MeshOutput& mesh, std::ostream& out);

// Readers for the files written above. Throw kParseError.
MeshOutput ReadMsh(std::istream& in);
MeshOutput ReadVtk(std::istream& in);

// File variants; kIoError when the file cannot be opened or written.
void WriteMesh(const MeshOutput& mesh, const std::string& path,
               MeshFormat format);
MeshOutput ReadMesh(const std::string& path, MeshFormat format);

}  // namespace spheremesh
