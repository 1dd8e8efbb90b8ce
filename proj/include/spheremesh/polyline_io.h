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

#include <iosfwd>
#include <string>

#include "spheremesh/geomodel.h"

namespace spheremesh {

enum class PolylineFormat { kGeoJson, kPolyText };

// .geojson and .json are GeoJSON, anything else poly text.
PolylineFormat PolylineFormatFromPath(const std::string& path);

// GeoJSON FeatureCollection, Feature or bare geometry. LineString,
// MultiLineString, Polygon and MultiPolygon are read, coordinates as
// [lon, lat] in degrees; polygon rings and line strings whose last point
// repeats the first become closed lines. Tags come from a "name" or "tag"
// property, else from the geometry type and feature index. Throws
// kParseError with the line of a syntax error or the offending feature.
PolylineSet ReadGeoJson(std::istream& in);

// Poly text: a header line "poly <tag> <closed: 0 or 1>" followed by one
// "lon lat" line per point; '#' starts a comment. Throws kParseError with
// the line number.
PolylineSet ReadPolyText(std::istream& in);

void WriteGeoJson(const PolylineSet& lines, std::ostream& out);
void WritePolyText(const PolylineSet& lines, std::ostream& out);

// File variants; kIoError when the file cannot be opened.
PolylineSet ReadPolylines(const std::string& path, PolylineFormat format);
PolylineSet ReadPolylines(const std::string& path);
void WritePolylines(const PolylineSet& lines, const std::string& path,
                    PolylineFormat format);

}  // namespace spheremesh
