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

#include "spheremesh/mesh_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "spheremesh/error.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

LonLat MeshOutput::lonlat(std::size_t i) const { return ToLonLat(vertices[i]); }

MeshOutput MakeMeshOutput(const SphericalMesh& mesh, bool keep_land) {
  MeshOutput out;
  const auto emitted = [&](const Triangle& t) {
    return t.live() && (keep_land || t.region == Region::kWater);
  };
  std::vector<VertexId> remap(mesh.vertices.size(), kNone);
  for (const Triangle& t : mesh.triangles) {
    if (!emitted(t)) continue;
    for (VertexId v : t.v) remap[v] = 0;
  }
  for (std::size_t i = 0; i < remap.size(); ++i) {
    if (remap[i] == kNone) continue;
    remap[i] = static_cast<VertexId>(out.vertices.size());
    out.vertices.push_back(mesh.vertices[i]);
  }
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const Triangle& t = mesh.triangles[i];
    if (!emitted(t)) continue;
    out.triangles.push_back({remap[t.v[0]], remap[t.v[1]], remap[t.v[2]]});
    out.regions.push_back(t.region);
    for (int e = 0; e < 3; ++e) {
      if (!t.IsConstrained(e)) continue;
      const Triangle& nb = mesh.triangles[t.n[e]];
      // One side per edge: the water side, or the lower index among equals.
      const bool water = t.region == Region::kWater;
      const bool nb_water = nb.region == Region::kWater;
      if (emitted(nb) && (nb_water && !water)) continue;
      if (emitted(nb) && nb_water == water && t.n[e] < static_cast<TriId>(i)) continue;
      out.boundary.emplace_back(remap[t.v[Prev3(e)]], remap[t.v[Next3(e)]]);
    }
  }
  return out;
}

MeshFormat MeshFormatFromPath(const std::string& path) {
  auto ends_with = [&](const std::string& s) {
    return path.size() >= s.size() &&
           path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".msh")) return MeshFormat::kMsh;
  if (ends_with(".vtk")) return MeshFormat::kVtk;
  throw Error(ErrorCode::kConfigError,
              "output must end in .msh or .vtk: " + path);
}

namespace {

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Coords(const UnitPoint& p) {
  return Num(p.x()) + " " + Num(p.y()) + " " + Num(p.z());
}

struct Box {
  double lo[3] = {1.0, 1.0, 1.0};
  double hi[3] = {-1.0, -1.0, -1.0};
  void Add(const UnitPoint& p) {
    const double c[3] = {p.x(), p.y(), p.z()};
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  std::string str() const {
    if (lo[0] > hi[0]) return "0 0 0 0 0 0";
    return Num(lo[0]) + " " + Num(lo[1]) + " " + Num(lo[2]) + " " +
           Num(hi[0]) + " " + Num(hi[1]) + " " + Num(hi[2]);
  }
};

constexpr int kWaterTag = 1;
constexpr int kLandTag = 2;
constexpr int kBoundaryTag = 1;  // curve entity
constexpr int kBoundaryPhysical = 3;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

// Whitespace tokenizer over a stream, with the section keyword helpers the
// readers need.
class Tokens {
 public:
  explicit Tokens(std::istream& in) : in_(in) {}
  std::string Word() {
    std::string s;
    if (!(in_ >> s)) Bad("unexpected end of file");
    return s;
  }
  bool TryWord(std::string* s) { return static_cast<bool>(in_ >> *s); }
  long long Int() {
    const std::string s = Word();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) Bad("expected an integer, got '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      Bad("expected an integer, got '" + s + "'");
    }
  }
  double Real() {
    const std::string s = Word();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) Bad("expected a number, got '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      Bad("expected a number, got '" + s + "'");
    }
  }
  void Expect(const std::string& w) {
    const std::string s = Word();
    if (s != w) Bad("expected '" + w + "', got '" + s + "'");
  }
  void SkipTo(const std::string& w) {
    std::string s;
    while (TryWord(&s)) {
      if (s == w) return;
    }
    Bad("missing '" + w + "'");
  }
  std::string RestOfLine() {
    std::string line;
    std::getline(in_, line);
    return line;
  }

 private:
  std::istream& in_;
};

}  // namespace

void WriteMsh(const MeshOutput& mesh, std::ostream& out) {
  Box water_box, land_box, boundary_box;
  std::size_t n_water = 0, n_land = 0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    Box& box = mesh.regions[i] == Region::kWater ? water_box : land_box;
    (mesh.regions[i] == Region::kWater ? n_water : n_land)++;
    for (VertexId v : mesh.triangles[i]) box.Add(mesh.vertices[v]);
  }
  for (const auto& [a, b] : mesh.boundary) {
    boundary_box.Add(mesh.vertices[a]);
    boundary_box.Add(mesh.vertices[b]);
  }

  out << "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n";
  out << "$PhysicalNames\n3\n"
      << "1 " << kBoundaryPhysical << " \"boundary\"\n"
      << "2 " << kWaterTag << " \"water\"\n"
      << "2 " << kLandTag << " \"land\"\n$EndPhysicalNames\n";
  out << "$Entities\n0 1 2 0\n";
  out << kBoundaryTag << " " << boundary_box.str() << " 1 " << kBoundaryPhysical
      << " 0\n";
  out << kWaterTag << " " << water_box.str() << " 1 " << kWaterTag << " 0\n";
  out << kLandTag << " " << land_box.str() << " 1 " << kLandTag << " 0\n";
  out << "$EndEntities\n";

  const std::size_t nv = mesh.vertices.size();
  out << "$Nodes\n";
  out << (nv > 0 ? 1 : 0) << " " << nv << " " << (nv > 0 ? 1 : 0) << " " << nv
      << "\n";
  if (nv > 0) {
    out << "2 " << kWaterTag << " 0 " << nv << "\n";
    for (std::size_t i = 0; i < nv; ++i) out << i + 1 << "\n";
    for (const UnitPoint& p : mesh.vertices) out << Coords(p) << "\n";
  }
  out << "$EndNodes\n";

  const std::size_t nb = mesh.boundary.size();
  const std::size_t blocks = (n_water > 0) + (n_land > 0) + (nb > 0);
  const std::size_t ne = mesh.triangles.size() + nb;
  out << "$Elements\n";
  out << blocks << " " << ne << " " << (ne > 0 ? 1 : 0) << " " << ne << "\n";
  std::size_t tag = 1;
  for (Region region : {Region::kWater, Region::kLand}) {
    const std::size_t count = region == Region::kWater ? n_water : n_land;
    if (count == 0) continue;
    out << "2 " << (region == Region::kWater ? kWaterTag : kLandTag) << " 2 "
        << count << "\n";
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
      if (mesh.regions[i] != region) continue;
      const auto& t = mesh.triangles[i];
      out << tag++ << " " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1
          << "\n";
    }
  }
  if (nb > 0) {
    out << "1 " << kBoundaryTag << " 1 " << nb << "\n";
    for (const auto& [a, b] : mesh.boundary) {
      out << tag++ << " " << a + 1 << " " << b + 1 << "\n";
    }
  }
  out << "$EndElements\n";
}

MeshOutput ReadMsh(std::istream& in) {
  Tokens tok(in);
  MeshOutput mesh;
  tok.SkipTo("$MeshFormat");
  const std::string version = tok.Word();
  if (version.rfind("4.1", 0) != 0) Bad("unsupported MSH version " + version);
  if (tok.Int() != 0) Bad("only ASCII MSH is supported");
  tok.Word();
  tok.Expect("$EndMeshFormat");

  std::unordered_map<long long, VertexId> node_index;
  std::string section;
  bool have_nodes = false;
  while (tok.TryWord(&section)) {
    if (section == "$Nodes") {
      const long long blocks = tok.Int();
      tok.Int();  // total
      tok.Int();
      tok.Int();
      for (long long b = 0; b < blocks; ++b) {
        tok.Int();
        tok.Int();
        if (tok.Int() != 0) Bad("parametric nodes are not supported");
        const long long count = tok.Int();
        std::vector<long long> tags(static_cast<std::size_t>(count));
        for (auto& t : tags) t = tok.Int();
        for (long long t : tags) {
          const double x = tok.Real(), y = tok.Real(), z = tok.Real();
          node_index[t] = static_cast<VertexId>(mesh.vertices.size());
          mesh.vertices.push_back(UnitPoint::FromNormalized({x, y, z}));
        }
      }
      tok.Expect("$EndNodes");
      have_nodes = true;
    } else if (section == "$Elements") {
      if (!have_nodes) Bad("$Elements before $Nodes");
      auto node = [&](long long tag) {
        const auto it = node_index.find(tag);
        if (it == node_index.end()) Bad("unknown node " + std::to_string(tag));
        return it->second;
      };
      const long long blocks = tok.Int();
      tok.Int();
      tok.Int();
      tok.Int();
      for (long long b = 0; b < blocks; ++b) {
        const long long dim = tok.Int();
        const long long entity = tok.Int();
        const long long type = tok.Int();
        const long long count = tok.Int();
        for (long long k = 0; k < count; ++k) {
          tok.Int();
          if (dim == 2 && type == 2) {
            const VertexId a = node(tok.Int()), c = node(tok.Int()), d = node(tok.Int());
            mesh.triangles.push_back({a, c, d});
            mesh.regions.push_back(entity == kLandTag ? Region::kLand : Region::kWater);
          } else if (dim == 1 && type == 1) {
            const VertexId a = node(tok.Int()), c = node(tok.Int());
            mesh.boundary.emplace_back(a, c);
          } else {
            Bad("unsupported element type " + std::to_string(type));
          }
        }
      }
      tok.Expect("$EndElements");
    } else if (!section.empty() && section[0] == '$' &&
               section.rfind("$End", 0) != 0) {
      tok.SkipTo("$End" + section.substr(1));
    } else {
      Bad("unexpected token '" + section + "'");
    }
  }
  if (!have_nodes) Bad("missing $Nodes");
  return mesh;
}

void WriteVtk(const MeshOutput& mesh, std::ostream& out) {
  const std::size_t nt = mesh.triangles.size();
  const std::size_t nb = mesh.boundary.size();
  out << "# vtk DataFile Version 3.0\nspheremesh\nASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertices.size() << " double\n";
  for (const UnitPoint& p : mesh.vertices) out << Coords(p) << "\n";
  out << "CELLS " << nt + nb << " " << 4 * nt + 3 * nb << "\n";
  for (const auto& t : mesh.triangles) {
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  for (const auto& [a, b] : mesh.boundary) out << "2 " << a << " " << b << "\n";
  out << "CELL_TYPES " << nt + nb << "\n";
  for (std::size_t i = 0; i < nt; ++i) out << "5\n";
  for (std::size_t i = 0; i < nb; ++i) out << "3\n";
  out << "CELL_DATA " << nt + nb << "\nSCALARS region int 1\nLOOKUP_TABLE default\n";
  for (Region r : mesh.regions) out << (r == Region::kLand ? 2 : 1) << "\n";
  for (std::size_t i = 0; i < nb; ++i) out << "3\n";
}

MeshOutput ReadVtk(std::istream& in) {
  std::string header;
  std::getline(in, header);
  if (header.rfind("# vtk DataFile", 0) != 0) Bad("not a legacy VTK file");
  std::getline(in, header);  // title
  Tokens tok(in);
  tok.Expect("ASCII");
  tok.Expect("DATASET");
  tok.Expect("UNSTRUCTURED_GRID");
  MeshOutput mesh;
  tok.Expect("POINTS");
  const long long np = tok.Int();
  tok.Word();
  for (long long i = 0; i < np; ++i) {
    const double x = tok.Real(), y = tok.Real(), z = tok.Real();
    mesh.vertices.push_back(UnitPoint::FromNormalized({x, y, z}));
  }
  auto vertex = [&](long long v) {
    if (v < 0 || v >= np) Bad("vertex index out of range");
    return static_cast<VertexId>(v);
  };
  tok.Expect("CELLS");
  const long long nc = tok.Int();
  tok.Int();
  std::vector<int> kind(static_cast<std::size_t>(nc));
  for (long long c = 0; c < nc; ++c) {
    const long long size = tok.Int();
    if (size == 3) {
      const VertexId a = vertex(tok.Int()), b = vertex(tok.Int()), d = vertex(tok.Int());
      mesh.triangles.push_back({a, b, d});
      kind[c] = 3;
    } else if (size == 2) {
      const VertexId a = vertex(tok.Int()), b = vertex(tok.Int());
      mesh.boundary.emplace_back(a, b);
      kind[c] = 2;
    } else {
      Bad("unsupported cell size " + std::to_string(size));
    }
  }
  tok.Expect("CELL_TYPES");
  if (tok.Int() != nc) Bad("CELL_TYPES count mismatch");
  for (long long c = 0; c < nc; ++c) tok.Int();
  mesh.regions.assign(mesh.triangles.size(), Region::kWater);
  std::string word;
  if (tok.TryWord(&word)) {
    if (word != "CELL_DATA") Bad("unexpected token '" + word + "'");
    if (tok.Int() != nc) Bad("CELL_DATA count mismatch");
    tok.Expect("SCALARS");
    tok.Word();
    tok.Word();
    tok.Word();
    tok.Expect("LOOKUP_TABLE");
    tok.Word();
    std::size_t t = 0;
    for (long long c = 0; c < nc; ++c) {
      const long long r = tok.Int();
      if (kind[c] == 3) mesh.regions[t++] = r == 2 ? Region::kLand : Region::kWater;
    }
  }
  return mesh;
}

void WriteMesh(const MeshOutput& mesh, const std::string& path,
               MeshFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  if (format == MeshFormat::kMsh) {
    WriteMsh(mesh, out);
  } else {
    WriteVtk(mesh, out);
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

MeshOutput ReadMesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return format == MeshFormat::kMsh ? ReadMsh(in) : ReadVtk(in);
}

}  // namespace spheremesh
