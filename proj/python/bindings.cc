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

// Python bindings. Points cross the boundary as float64 arrays of shape
// (n, 3) on the unit sphere or (n, 2) lon/lat in degrees.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spheremesh/error.h"
#include "spheremesh/hilbert.h"
#include "spheremesh/kernel.h"
#include "spheremesh/mesh_io.h"
#include "spheremesh/one_dim.h"
#include "spheremesh/parallel_kernel.h"
#include "spheremesh/pipeline.h"
#include "spheremesh/polyline_io.h"
#include "spheremesh/predicates.h"

namespace py = pybind11;

namespace {

using spheremesh::UnitPoint;
using spheremesh::Vec3;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<UnitPoint> ToPoints(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) != 3) {
    throw py::value_error("expected an array of shape (n, 3)");
  }
  auto r = a.unchecked<2>();
  std::vector<UnitPoint> out;
  out.reserve(r.shape(0));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) out.emplace_back(r(i, 0), r(i, 1), r(i, 2));
  return out;
}

std::vector<UnitPoint> FromLonLat(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) {
    throw py::value_error("expected an array of shape (n, 2) of lon, lat degrees");
  }
  auto r = a.unchecked<2>();
  std::vector<UnitPoint> out;
  out.reserve(r.shape(0));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) {
    out.push_back(spheremesh::ToUnitSphere(r(i, 0), r(i, 1)));
  }
  return out;
}

py::array_t<double> XyzArray(const std::vector<UnitPoint>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(i, 0) = pts[i].x();
    w(i, 1) = pts[i].y();
    w(i, 2) = pts[i].z();
  }
  return out;
}

py::array_t<double> LonLatArray(const std::vector<UnitPoint>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const spheremesh::LonLat ll = spheremesh::ToLonLat(pts[i]);
    w(i, 0) = ll.lon;
    w(i, 1) = ll.lat;
  }
  return out;
}

template <typename Pairs>
py::array_t<std::int64_t> IndexArray(const Pairs& rows, int width) {
  py::array_t<std::int64_t> out({static_cast<py::ssize_t>(rows.size()),
                                 static_cast<py::ssize_t>(width)});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if constexpr (requires { rows[i].first; }) {
      w(i, 0) = rows[i].first;
      w(i, 1) = rows[i].second;
    } else {
      for (int k = 0; k < width; ++k) w(i, k) = rows[i][k];
    }
  }
  return out;
}

const char* SignName(spheremesh::Sign s) {
  return s == spheremesh::Sign::kPositive   ? "positive"
         : s == spheremesh::Sign::kNegative ? "negative"
                                            : "zero";
}

Vec3 V(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

py::list PolylineList(const spheremesh::PolylineSet& set) {
  py::list lines;
  for (const spheremesh::Polyline& line : set.lines) {
    py::dict d;
    d["lonlat"] = LonLatArray(set.Points(line));
    d["closed"] = line.closed;
    d["tag"] = line.tag;
    lines.append(d);
  }
  return lines;
}

py::dict MeshDict(const spheremesh::MeshOutput& m) {
  py::dict d;
  d["xyz"] = XyzArray(m.vertices);
  d["lonlat"] = LonLatArray(m.vertices);
  d["triangles"] = IndexArray(m.triangles, 3);
  py::array_t<std::int8_t> regions(static_cast<py::ssize_t>(m.regions.size()));
  auto w = regions.mutable_unchecked<1>();
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    w(i) = static_cast<std::int8_t>(m.regions[i]);
  }
  d["regions"] = regions;
  d["boundary"] = IndexArray(m.boundary, 2);
  return d;
}

py::dict RunPipelinePy(const std::vector<Array>& lines, const std::vector<bool>& closed,
                       const std::vector<std::array<double, 2>>& seeds, double h_min_m,
                       std::optional<double> h_max_m, double d_min_m, double d_max_m,
                       double radius_m, double eps, double beta, double inset,
                       int threads, int max_iter, int smooth_passes, bool keep_land,
                       bool coarsen_only, const std::string& output) {
  if (!closed.empty() && closed.size() != lines.size()) {
    throw py::value_error("closed must have one flag per line");
  }
  spheremesh::PolylineSet raw;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    raw.AddLine(FromLonLat(lines[i]), closed.empty() || closed[i], "line" + std::to_string(i));
  }
  spheremesh::PipelineConfig c;
  for (const auto& s : seeds) c.seeds.push_back({s[0], s[1]});
  c.h_min_m = h_min_m;
  c.h_max_m = h_max_m.value_or(h_min_m);
  c.d_min_m = d_min_m;
  c.d_max_m = d_max_m;
  c.radius_m = radius_m;
  c.eps = eps;
  c.beta = beta;
  c.inset_fraction = inset;
  c.threads = threads;
  c.max_iter = max_iter;
  c.smooth_passes = smooth_passes;
  c.keep_land = keep_land;
  c.stage = coarsen_only ? spheremesh::Stage::kCoarsenOnly : spheremesh::Stage::kFull;
  c.output = output;

  spheremesh::PipelineResult r;
  {
    py::gil_scoped_release release;
    r = spheremesh::RunPipeline(raw, c);
  }
  py::dict d;
  d["coarse"] = PolylineList(r.domain.boundary);
  py::dict timings;
  for (const spheremesh::StageTiming& t : r.timings) timings[t.stage.c_str()] = t.seconds;
  d["timings"] = timings;
  d["total_seconds"] = r.total_seconds;
  py::list iterations;
  for (const spheremesh::IterationStats& s : r.refine.iterations) {
    py::dict it;
    it["iteration"] = s.iteration;
    it["candidates"] = s.candidates;
    it["inserted"] = s.inserted;
    it["rejected"] = s.rejected;
    it["seconds"] = s.seconds;
    iterations.append(it);
  }
  d["iterations"] = iterations;
  d["converged"] = r.refine.converged;
  if (!coarsen_only) {
    d["mesh"] = MeshDict(spheremesh::MakeMeshOutput(r.mesh.mesh, keep_land));
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_spheremesh, m) {
  m.doc() = "Delaunay meshing of ocean domains on the unit sphere";

  // Kept for the lifetime of the interpreter.
  static py::handle error =
      py::exception<spheremesh::Error>(m, "SphereMeshError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const spheremesh::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("code") = std::string(spheremesh::ErrorCodeName(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
      "orient3d",
      [](const std::array<double, 3>& p1, const std::array<double, 3>& p2,
         const std::array<double, 3>& p3, const std::array<double, 3>& p4) {
        return SignName(spheremesh::Orient3d(V(p1), V(p2), V(p3), V(p4)));
      },
      "Exact sign of det[p2 - p1, p3 - p1, p4 - p1].");
  m.def(
      "in_circumcircle",
      [](const std::array<double, 3>& t1, const std::array<double, 3>& t2,
         const std::array<double, 3>& t3, const std::array<double, 3>& p) {
        switch (spheremesh::InCircumcircle(UnitPoint(V(t1)), UnitPoint(V(t2)),
                                           UnitPoint(V(t3)), UnitPoint(V(p)))) {
          case spheremesh::CircleSide::kInside: return "inside";
          case spheremesh::CircleSide::kOutside: return "outside";
          default: return "on";
        }
      },
      "Side of p with respect to the circumcircle of a positive triangle.");
  m.def(
      "to_unit_sphere", [](const Array& lonlat) { return XyzArray(FromLonLat(lonlat)); },
      "Lon/lat degrees (n, 2) to unit vectors (n, 3).");
  m.def(
      "hilbert_sort",
      [](const Array& points) {
        const std::vector<std::uint32_t> order = spheremesh::HilbertSort(ToPoints(points));
        py::array_t<std::uint32_t> out(static_cast<py::ssize_t>(order.size()));
        std::copy(order.begin(), order.end(), out.mutable_data());
        return out;
      },
      "Permutation ordering the points along the Hilbert curve.");
  m.def(
      "delaunay",
      [](const Array& points, int threads, bool allow_helper_vertices) {
        const std::vector<UnitPoint> pts = ToPoints(points);
        spheremesh::DelaunayOptions options;
        options.threads = threads;
        options.allow_helper_vertices = allow_helper_vertices;
        spheremesh::SphericalMesh mesh;
        {
          py::gil_scoped_release release;
          mesh = spheremesh::DelaunayFromPoints(pts, options);
        }
        std::vector<std::array<spheremesh::VertexId, 3>> tris;
        for (const spheremesh::Triangle& t : mesh.triangles) {
          if (t.live()) tris.push_back(t.v);
        }
        return py::make_tuple(XyzArray(mesh.vertices), IndexArray(tris, 3));
      },
      py::arg("points"), py::arg("threads") = 1, py::arg("allow_helper_vertices") = false,
      "Delaunay triangulation of unit vectors; returns (vertices, triangles).");
  m.def(
      "density_table",
      [](double length, const std::function<double(double)>& h, double eps) {
        const spheremesh::DensityTable t = spheremesh::BuildDensityTable(length, h, eps);
        py::dict d;
        d["t"] = t.t;
        d["delta"] = t.delta;
        d["evaluations"] = t.evaluations;
        d["max_depth_reached"] = t.max_depth_reached;
        return d;
      },
      py::arg("length"), py::arg("h"), py::arg("eps") = spheremesh::kDefaultDensityEps,
      "Adaptive primitive of length / h(u) over u in [0, 1].");
  m.def(
      "subdivide",
      [](const std::vector<double>& t, const std::vector<double>& delta,
         std::optional<std::size_t> n) {
        if (t.size() != delta.size() || t.size() < 2) {
          throw py::value_error("t and delta must have the same length, at least 2");
        }
        spheremesh::DensityTable table;
        table.t = t;
        table.delta = delta;
        return n ? spheremesh::Subdivide(table, *n) : spheremesh::Subdivide(table);
      },
      py::arg("t"), py::arg("delta"), py::arg("n") = py::none(),
      "Interior parameters splitting the table into equal parts.");
  m.def(
      "run_pipeline", &RunPipelinePy, py::arg("lines"), py::arg("closed") = std::vector<bool>{},
      py::arg("seeds"), py::arg("h_min_m"), py::arg("h_max_m") = py::none(),
      py::arg("d_min_m") = 0.0, py::arg("d_max_m") = 0.0,
      py::arg("radius_m") = spheremesh::kEarthRadiusMetres,
      py::arg("eps") = spheremesh::kDefaultDensityEps, py::arg("beta") = 0.7,
      py::arg("inset") = 0.1, py::arg("threads") = 1, py::arg("max_iter") = 30,
      py::arg("smooth_passes") = 3, py::arg("keep_land") = false,
      py::arg("coarsen_only") = false, py::arg("output") = std::string(),
      "Coastline polylines (lon/lat degrees) to a water mesh.");
  m.def(
      "read_polylines",
      [](const std::string& path) { return PolylineList(spheremesh::ReadPolylines(path)); },
      "GeoJSON or poly text coastlines as a list of dicts.");
  m.def(
      "read_mesh",
      [](const std::string& path) {
        return MeshDict(spheremesh::ReadMesh(path, spheremesh::MeshFormatFromPath(path)));
      },
      "Mesh written by run_pipeline or the command line tool.");
  m.def(
      "benchmark",
      [](std::size_t n, int threads, std::uint64_t seed) {
        spheremesh::ThroughputReport r;
        {
          py::gil_scoped_release release;
          r = spheremesh::ThroughputBenchmark(n, threads, 0.0, seed);
        }
        py::dict d;
        d["n"] = r.n;
        d["threads"] = r.threads;
        d["seconds"] = r.seconds;
        d["points_per_second"] = r.points_per_second;
        return d;
      },
      py::arg("n"), py::arg("threads") = 1, py::arg("seed") = 1,
      "Delaunay throughput on uniform random points.");
}
