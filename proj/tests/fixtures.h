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

// Synthetic coastlines shared by the test suites.

#pragma once

#include <cmath>
#include <vector>

#include "spheremesh/geomodel.h"
#include "spheremesh/geometry.h"
#include "spheremesh/predicates.h"

namespace spheremesh::testing {

inline double Radians(double deg) { return deg * kPi / 180.0; }

inline UnitPoint LL(double lon, double lat) { return ToUnitSphere(lon, lat); }

// Small circle of angular radius r_deg around (lon0, lat0), n points.
inline std::vector<UnitPoint> CircleRing(double lon0, double lat0, double r_deg,
                                         int n) {
  const Vec3 c = LL(lon0, lat0);
  const Vec3 east = UnitPoint(Cross({0.0, 0.0, 1.0}, c)).vec();
  const Vec3 north = Cross(c, east);
  const double r = Radians(r_deg);
  std::vector<UnitPoint> ring;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * k / n;
    ring.push_back(UnitPoint(std::cos(r) * c +
                             std::sin(r) * (std::cos(a) * east + std::sin(a) * north)));
  }
  return ring;
}

// Two circular basins of radius `radius` degrees centred at lon -offset and
// +offset on the equator, joined by a straight channel of the given width
// (degrees of latitude). Points are spaced about `step` degrees apart.
inline std::vector<UnitPoint> TwoBasinRing(double radius, double offset,
                                           double width, double step) {
  std::vector<UnitPoint> ring;
  const double phi = std::asin(0.5 * width / radius);
  auto arc = [&](double cx, double a0, double a1) {
    const int n = std::max(2, static_cast<int>(std::ceil(std::fabs(a1 - a0) * radius / step)));
    for (int k = 0; k < n; ++k) {
      const double a = a0 + (a1 - a0) * k / n;
      ring.push_back(LL(cx + radius * std::cos(a), radius * std::sin(a)));
    }
  };
  auto line = [&](double lon0, double lon1, double lat) {
    const int n = std::max(2, static_cast<int>(std::ceil(std::fabs(lon1 - lon0) / step)));
    for (int k = 0; k < n; ++k) ring.push_back(LL(lon0 + (lon1 - lon0) * k / n, lat));
  };
  const double join = radius * std::cos(phi);
  line(-offset + join, offset - join, 0.5 * width);
  arc(offset, kPi - phi, -kPi + phi);
  line(offset - join, -offset + join, -0.5 * width);
  arc(-offset, -phi, phi - 2.0 * kPi);
  return ring;
}

}  // namespace spheremesh::testing
