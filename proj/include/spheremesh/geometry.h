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

#include <cmath>

namespace spheremesh {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 Cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

inline double Norm(const Vec3& a) { return std::sqrt(Dot(a, a)); }

constexpr double SquaredDistance(const Vec3& a, const Vec3& b) {
  const Vec3 d = a - b;
  return Dot(d, d);
}

// A point of the unit sphere. Construction always renormalizes, so the
// invariant x^2 + y^2 + z^2 = 1 holds to rounding.
class UnitPoint {
 public:
  constexpr UnitPoint() : v_{1.0, 0.0, 0.0} {}
  UnitPoint(double x, double y, double z) : UnitPoint(Vec3{x, y, z}) {}
  explicit UnitPoint(const Vec3& v) {
    const double n = Norm(v);
    v_ = (n > 0.0) ? (1.0 / n) * v : Vec3{1.0, 0.0, 0.0};
  }

  // Skips renormalization; for coordinates already known to lie on S.
  static constexpr UnitPoint FromNormalized(const Vec3& v) {
    UnitPoint p;
    p.v_ = v;
    return p;
  }

  constexpr double x() const { return v_.x; }
  constexpr double y() const { return v_.y; }
  constexpr double z() const { return v_.z; }
  constexpr const Vec3& vec() const { return v_; }
  constexpr operator const Vec3&() const { return v_; }  // NOLINT

  friend constexpr bool operator==(const UnitPoint&, const UnitPoint&) =
      default;

 private:
  Vec3 v_;
};

struct LonLat {
  double lon = 0.0;  // degrees
  double lat = 0.0;  // degrees
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEarthRadiusMetres = 6371000.0;

}  // namespace spheremesh
