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

#include <gtest/gtest.h>

#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "spheremesh/error.h"
#include "spheremesh/kernel.h"
#include "spheremesh/mesh_io.h"
#include "spheremesh/parallel_kernel.h"
#include "spheremesh/polyline_io.h"

namespace spheremesh {
namespace {

using testing::LL;

// The bootstrap tetrahedron, every triangle water.
SphericalMesh Tetrahedron() {
  SphericalMesh mesh = DelaunayFromPoints(std::vector<UnitPoint>{
      UnitPoint(1, 1, 1), UnitPoint(1, -1, -1), UnitPoint(-1, 1, -1), UnitPoint(-1, -1, 1)});
  for (Triangle& t : mesh.triangles) t.region = Region::kWater;
  return mesh;
}

// Random mesh, a cap of water with its rim edges flagged as boundary.
MeshOutput SampleOutput() {
  SphericalMesh mesh = DelaunayFromPoints(UniformSpherePoints(500, 3));
  for (Triangle& t : mesh.triangles) {
    if (!t.live()) continue;
    const Vec3 c = mesh.vertices[t.v[0]].vec() + mesh.vertices[t.v[1]].vec() +
                   mesh.vertices[t.v[2]].vec();
    t.region = c.z > 0 ? Region::kWater : Region::kLand;
  }
  for (Triangle& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      t.SetConstrained(e, t.live() && t.region != mesh.triangles[t.n[e]].region);
    }
  }
  return MakeMeshOutput(mesh, true);
}

std::string Write(const MeshOutput& m, MeshFormat f) {
  std::ostringstream out;
  if (f == MeshFormat::kMsh) {
    WriteMsh(m, out);
  } else {
    WriteVtk(m, out);
  }
  return out.str();
}

MeshOutput Read(const std::string& text, MeshFormat f) {
  std::istringstream in(text);
  return f == MeshFormat::kMsh ? ReadMsh(in) : ReadVtk(in);
}

std::multiset<std::pair<std::array<VertexId, 3>, Region>> Tagged(const MeshOutput& m) {
  std::multiset<std::pair<std::array<VertexId, 3>, Region>> set;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) set.insert({m.triangles[i], m.regions[i]});
  return set;
}

ErrorCode CodeOf(const std::function<void()>& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.message();
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kContractViolation;
}

TEST(MeshOutputTest, TetrahedronCounts) {
  const MeshOutput m = MakeMeshOutput(Tetrahedron());
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.triangles.size(), 4u);
  EXPECT_TRUE(m.boundary.empty());
  for (MeshFormat f : {MeshFormat::kMsh, MeshFormat::kVtk}) {
    const MeshOutput back = Read(Write(m, f), f);
    EXPECT_EQ(back.vertices.size(), 4u);
    EXPECT_EQ(back.triangles, m.triangles);
  }
}

TEST(MeshOutputTest, KeepLandSelectsTriangles) {
  const MeshOutput all = SampleOutput();
  std::size_t water = 0;
  for (Region r : all.regions) water += r == Region::kWater;
  ASSERT_GT(water, 0u);
  ASSERT_LT(water, all.triangles.size());
  SphericalMesh mesh = DelaunayFromPoints(UniformSpherePoints(500, 3));
  for (Triangle& t : mesh.triangles) t.region = Region::kLand;
  EXPECT_TRUE(MakeMeshOutput(mesh).triangles.empty());
  EXPECT_EQ(MakeMeshOutput(mesh, true).triangles.size(), mesh.LiveTriangleCount());
}

TEST(MeshIoTest, RoundTripIsByteIdentical) {
  const MeshOutput m = SampleOutput();
  ASSERT_FALSE(m.boundary.empty());
  for (MeshFormat f : {MeshFormat::kMsh, MeshFormat::kVtk}) {
    const std::string first = Write(m, f);
    const MeshOutput back = Read(first, f);
    EXPECT_EQ(Write(back, f), first);
    ASSERT_EQ(back.vertices.size(), m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      EXPECT_NEAR(Dot(back.vertices[i], back.vertices[i]), 1.0, 1e-9);
      EXPECT_LT(Norm(back.vertices[i].vec() - m.vertices[i].vec()), 1e-12);
    }
    // Writers group triangles by region.
    EXPECT_EQ(Tagged(back), Tagged(m));
    EXPECT_EQ(back.boundary, m.boundary);
  }
}

TEST(MeshIoTest, FileRoundTrip) {
  const MeshOutput m = SampleOutput();
  const std::string path = ::testing::TempDir() + "/io_test_mesh.vtk";
  WriteMesh(m, path, MeshFormatFromPath(path));
  EXPECT_EQ(Tagged(ReadMesh(path, MeshFormat::kVtk)), Tagged(m));
  EXPECT_EQ(CodeOf([] { ReadMesh("/nonexistent/x.msh", MeshFormat::kMsh); }),
            ErrorCode::kIoError);
}

TEST(MeshIoTest, FormatFromPath) {
  EXPECT_EQ(MeshFormatFromPath("a/b.msh"), MeshFormat::kMsh);
  EXPECT_EQ(MeshFormatFromPath("b.vtk"), MeshFormat::kVtk);
  EXPECT_EQ(CodeOf([] { MeshFormatFromPath("b.obj"); }), ErrorCode::kConfigError);
}

TEST(MeshIoTest, MalformedInput) {
  EXPECT_EQ(CodeOf([] { Read("garbage\n", MeshFormat::kMsh); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { Read("", MeshFormat::kVtk); }), ErrorCode::kParseError);
  std::string text = Write(MakeMeshOutput(Tetrahedron()), MeshFormat::kMsh);
  text.resize(text.size() / 2);
  EXPECT_EQ(CodeOf([&] { Read(text, MeshFormat::kMsh); }), ErrorCode::kParseError);
}

TEST(MeshOutputTest, LonLatDegrees) {
  MeshOutput m;
  m.vertices = {LL(30, -45)};
  EXPECT_NEAR(m.lonlat(0).lon, 30.0, 1e-12);
  EXPECT_NEAR(m.lonlat(0).lat, -45.0, 1e-12);
}

PolylineSet GeoJson(const std::string& text) {
  std::istringstream in(text);
  return ReadGeoJson(in);
}

TEST(GeoJsonTest, EmptyCollection) {
  const PolylineSet s = GeoJson(R"({"type": "FeatureCollection", "features": []})");
  EXPECT_TRUE(s.lines.empty());
  EXPECT_TRUE(s.pool.empty());
}

TEST(GeoJsonTest, PolygonRingIsClosed) {
  const PolylineSet s = GeoJson(
      R"({"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 0]]]})");
  ASSERT_EQ(s.lines.size(), 1u);
  EXPECT_TRUE(s.lines[0].closed);
  EXPECT_EQ(s.lines[0].points.size(), 3u);
  EXPECT_LT(Norm(s.Points(s.lines[0])[1].vec() - LL(1, 0).vec()), 1e-15);
}

TEST(GeoJsonTest, MixedFeaturesAndTags) {
  const PolylineSet s = GeoJson(R"({"type": "FeatureCollection", "features": [
    {"type": "Feature", "properties": {"name": "coast"},
     "geometry": {"type": "LineString", "coordinates": [[0, 0], [1, 0], [2, 1]]}},
    {"type": "Feature", "properties": {},
     "geometry": {"type": "MultiPolygon", "coordinates": [
       [[[10, 0], [11, 0], [11, 1], [10, 0]]],
       [[[20, 0], [21, 0], [21, 1], [20, 1], [20, 0]]]]}}]})");
  ASSERT_EQ(s.lines.size(), 3u);
  EXPECT_EQ(s.lines[0].tag, "coast");
  EXPECT_FALSE(s.lines[0].closed);
  EXPECT_TRUE(s.lines[1].closed);
  EXPECT_EQ(s.lines[2].points.size(), 4u);
  EXPECT_FALSE(s.lines[1].tag.empty());
  EXPECT_EQ(s.SegmentCount(), 2u + 3u + 4u);
}

TEST(GeoJsonTest, SyntaxErrorNamesTheLine) {
  std::string message;
  EXPECT_EQ(CodeOf([] { GeoJson("{\n\"type\": \"Polygon\",\n\"coordinates\": [[0, 0],,]}"); },
                   &message),
            ErrorCode::kParseError);
  EXPECT_NE(message.find("line 3"), std::string::npos) << message;
  EXPECT_EQ(CodeOf([] { GeoJson(R"({"type": "Circle", "coordinates": [0, 0]})"); }),
            ErrorCode::kParseError);
  // Points carry no coastline and are skipped.
  EXPECT_TRUE(GeoJson(R"({"type": "Point", "coordinates": [0, 0]})").lines.empty());
}

TEST(GeoJsonTest, WriteReadRoundTrip) {
  PolylineSet s;
  s.AddLine(testing::CircleRing(5, 5, 2, 12), true, "ring");
  s.AddLine(std::vector<UnitPoint>{LL(0, 0), LL(0, 3)}, false, "open");
  std::ostringstream out;
  WriteGeoJson(s, out);
  const PolylineSet back = GeoJson(out.str());
  ASSERT_EQ(back.lines.size(), 2u);
  EXPECT_EQ(back.lines[0].tag, "ring");
  EXPECT_TRUE(back.lines[0].closed);
  EXPECT_FALSE(back.lines[1].closed);
  ASSERT_EQ(back.pool.size(), s.pool.size());
  for (std::size_t i = 0; i < s.pool.size(); ++i) {
    EXPECT_LT(Norm(back.pool[i].vec() - s.pool[i].vec()), 1e-12);
  }
}

TEST(PolyTextTest, RoundTripAndErrors) {
  std::istringstream in("# two lines\npoly a 1\n0 0\n1 0\n1 1\npoly b 0\n5 5\n6 6\n");
  const PolylineSet s = ReadPolyText(in);
  ASSERT_EQ(s.lines.size(), 2u);
  EXPECT_EQ(s.lines[0].tag, "a");
  EXPECT_TRUE(s.lines[0].closed);
  EXPECT_FALSE(s.lines[1].closed);
  std::ostringstream out;
  WritePolyText(s, out);
  std::istringstream again(out.str());
  const PolylineSet back = ReadPolyText(again);
  ASSERT_EQ(back.pool.size(), s.pool.size());
  for (std::size_t i = 0; i < s.pool.size(); ++i) {
    EXPECT_LT(Norm(back.pool[i].vec() - s.pool[i].vec()), 1e-15);
  }
  EXPECT_EQ(back.lines[1].tag, "b");

  std::string message;
  EXPECT_EQ(CodeOf(
                [] {
                  std::istringstream bad("poly a 1\n0 0\nnot a number\n");
                  ReadPolyText(bad);
                },
                &message),
            ErrorCode::kParseError);
  EXPECT_NE(message.find("line 3"), std::string::npos) << message;
  EXPECT_EQ(PolylineFormatFromPath("x.geojson"), PolylineFormat::kGeoJson);
  EXPECT_EQ(PolylineFormatFromPath("x.json"), PolylineFormat::kGeoJson);
  EXPECT_EQ(PolylineFormatFromPath("x.poly"), PolylineFormat::kPolyText);
}

}  // namespace
}  // namespace spheremesh
