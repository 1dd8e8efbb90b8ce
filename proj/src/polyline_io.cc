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

#include "spheremesh/polyline_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "spheremesh/error.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

using nlohmann::json;

PolylineFormat PolylineFormatFromPath(const std::string& path) {
  std::string lower = path;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto ends_with = [&](const std::string& s) {
    return lower.size() >= s.size() &&
           lower.compare(lower.size() - s.size(), s.size(), s) == 0;
  };
  return ends_with(".geojson") || ends_with(".json") ? PolylineFormat::kGeoJson
                                                     : PolylineFormat::kPolyText;
}

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

std::size_t LineOfOffset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

class GeoJsonReader {
 public:
  PolylineSet Read(const json& root) {
    Object(root);
    return std::move(out_);
  }

 private:
  void Object(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
      Fail("object without a string \"type\"");
    }
    const std::string type = j["type"];
    if (type == "FeatureCollection") {
      if (!j.contains("features") || !j["features"].is_array()) {
        Fail("FeatureCollection without a features array");
      }
      for (const json& f : j["features"]) {
        Object(f);
        ++feature_;
      }
    } else if (type == "Feature") {
      tag_.clear();
      if (j.contains("properties") && j["properties"].is_object()) {
        const json& p = j["properties"];
        for (const char* key : {"name", "tag"}) {
          if (p.contains(key) && p[key].is_string()) {
            tag_ = p[key];
            break;
          }
        }
      }
      if (j.contains("geometry") && !j["geometry"].is_null()) {
        Geometry(j["geometry"]);
      }
      tag_.clear();
    } else {
      Geometry(j);
    }
  }

  void Geometry(const json& g) {
    if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) {
      Fail("geometry without a string \"type\"");
    }
    const std::string type = g["type"];
    if (type == "GeometryCollection") {
      if (!g.contains("geometries") || !g["geometries"].is_array()) {
        Fail("GeometryCollection without geometries");
      }
      for (const json& sub : g["geometries"]) Geometry(sub);
      return;
    }
    if (type == "Point" || type == "MultiPoint") return;
    if (!g.contains("coordinates") || !g["coordinates"].is_array()) {
      Fail(type + " without coordinates");
    }
    const json& c = g["coordinates"];
    const std::string tag = tag_.empty() ? type + "#" + std::to_string(feature_) : tag_;
    if (type == "LineString") {
      Line(c, false, tag);
    } else if (type == "MultiLineString") {
      for (const json& l : c) Line(l, false, tag);
    } else if (type == "Polygon") {
      for (const json& ring : c) Line(ring, true, tag);
    } else if (type == "MultiPolygon") {
      for (const json& poly : c) {
        if (!poly.is_array()) Fail("MultiPolygon member is not an array");
        for (const json& ring : poly) Line(ring, true, tag);
      }
    } else {
      Fail("unsupported geometry type " + type);
    }
  }

  void Line(const json& coords, bool ring, const std::string& tag) {
    if (!coords.is_array()) Fail("coordinates are not an array");
    std::vector<UnitPoint> points;
    std::vector<std::pair<double, double>> raw;
    for (const json& pos : coords) {
      if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() ||
          !pos[1].is_number()) {
        Fail("position is not [lon, lat]");
      }
      const double lon = pos[0], lat = pos[1];
      raw.emplace_back(lon, lat);
      try {
        points.push_back(ToUnitSphere(lon, lat));
      } catch (const Error& e) {
        Fail(e.message());
      }
    }
    const bool closed = ring || (raw.size() > 2 && raw.front() == raw.back());
    out_.AddLine(points, closed, tag);
  }

  [[noreturn]] void Fail(const std::string& what) const {
    Bad("feature " + std::to_string(feature_) + ": " + what);
  }

  PolylineSet out_;
  std::size_t feature_ = 0;
  std::string tag_;
};

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PolylineSet ReadGeoJson(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    Bad("line " + std::to_string(LineOfOffset(text, e.byte)) + ": " + e.what());
  }
  return GeoJsonReader().Read(root);
}

PolylineSet ReadPolyText(std::istream& in) {
  PolylineSet out;
  std::vector<UnitPoint> points;
  std::string tag;
  bool closed = false;
  bool open_record = false;
  auto flush = [&] {
    if (open_record) out.AddLine(points, closed, tag);
    points.clear();
  };
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = "line " + std::to_string(number) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "poly") {
      flush();
      int flag = -1;
      std::string extra;
      if (!(fields >> tag >> flag) || (flag != 0 && flag != 1) || (fields >> extra)) {
        Bad(where + "expected 'poly <tag> <0|1>'");
      }
      closed = flag == 1;
      open_record = true;
      continue;
    }
    if (!open_record) Bad(where + "point before any 'poly' header");
    double lon = 0.0, lat = 0.0;
    std::string extra;
    std::istringstream pair(line);
    if (!(pair >> lon >> lat) || (pair >> extra)) Bad(where + "expected 'lon lat'");
    try {
      points.push_back(ToUnitSphere(lon, lat));
    } catch (const Error& e) {
      Bad(where + e.message());
    }
  }
  flush();
  return out;
}

void WriteGeoJson(const PolylineSet& lines, std::ostream& out) {
  json features = json::array();
  for (const Polyline& line : lines.lines) {
    json coords = json::array();
    for (std::uint32_t i : line.points) {
      const LonLat ll = ToLonLat(lines.pool[i]);
      coords.push_back({ll.lon, ll.lat});
    }
    if (line.closed && !coords.empty()) coords.push_back(coords.front());
    features.push_back({{"type", "Feature"},
                        {"properties", {{"tag", line.tag}, {"closed", line.closed}}},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}});
  }
  json root = {{"type", "FeatureCollection"}, {"features", features}};
  out << root.dump(1) << "\n";
}

void WritePolyText(const PolylineSet& lines, std::ostream& out) {
  for (const Polyline& line : lines.lines) {
    out << "poly " << (line.tag.empty() ? "-" : line.tag) << " "
        << (line.closed ? 1 : 0) << "\n";
    for (std::uint32_t i : line.points) {
      const LonLat ll = ToLonLat(lines.pool[i]);
      out << Num(ll.lon) << " " << Num(ll.lat) << "\n";
    }
  }
}

PolylineSet ReadPolylines(const std::string& path, PolylineFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  try {
    return format == PolylineFormat::kGeoJson ? ReadGeoJson(in) : ReadPolyText(in);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, path + ": " + e.message());
  }
}

PolylineSet ReadPolylines(const std::string& path) {
  return ReadPolylines(path, PolylineFormatFromPath(path));
}

void WritePolylines(const PolylineSet& lines, const std::string& path,
                    PolylineFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  if (format == PolylineFormat::kGeoJson) {
    WriteGeoJson(lines, out);
  } else {
    WritePolyText(lines, out);
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace spheremesh
