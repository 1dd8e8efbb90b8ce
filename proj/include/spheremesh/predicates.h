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

#include "spheremesh/geometry.h"

namespace spheremesh {

enum class Sign : int { kNegative = -1, kZero = 0, kPositive = 1 };

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

enum class CircleSide { kInside, kOutside, kOnCircle };

namespace internal {

// Static error bound for a 3x3 determinant whose entries carry at
// most one rounding each: (7 + 56 eps) eps with eps = 2^-53.
inline constexpr double kOrient3dErrBound = (7.0 + 56.0 * 0x1p-53) * 0x1p-53;

// Exact fallbacks, evaluated with floating-point expansions.
Sign Orient3dExact(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                   const Vec3& p4);
Sign Det3Exact(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace internal

// Sign of the 4x4 determinant with rows (1, x, y, z) and columns p1..p4,
// i.e. the sign of det[p2 - p1 | p3 - p1 | p4 - p1]. Exact for all double
// inputs: a floating-point filter decides the sign when the error bound
// allows it, otherwise the determinant is evaluated exactly.
inline Sign Orient3d(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                     const Vec3& p4) {
  // Evaluated as -det[p1 - p4; p2 - p4; p3 - p4], which equals the
  // determinant above.
  const double adx = p1.x - p4.x, bdx = p2.x - p4.x, cdx = p3.x - p4.x;
  const double ady = p1.y - p4.y, bdy = p2.y - p4.y, cdy = p3.y - p4.y;
  const double adz = p1.z - p4.z, bdz = p2.z - p4.z, cdz = p3.z - p4.z;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) +
                     cdz * (adxbdy - bdxady);
  const double permanent =
      (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
      (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
      (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
  const double bound = internal::kOrient3dErrBound * permanent;
  if (det > bound) return Sign::kNegative;
  if (-det > bound) return Sign::kPositive;
  return internal::Orient3dExact(p1, p2, p3, p4);
}

// Orient3d(a, b, c, origin), specialised: equals -sign(det[a; b; c]).
// Positive means the spherical triangle (a, b, c) is positively oriented and,
// for an edge (a, b) of such a triangle, that c lies on its inner side.
inline Sign OrientOrigin(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double bycz = b.y * c.z, bzcy = b.z * c.y;
  const double bzcx = b.z * c.x, bxcz = b.x * c.z;
  const double bxcy = b.x * c.y, bycx = b.y * c.x;
  const double det =
      a.x * (bycz - bzcy) + a.y * (bzcx - bxcz) + a.z * (bxcy - bycx);
  const double permanent = (std::fabs(bycz) + std::fabs(bzcy)) * std::fabs(a.x) +
                           (std::fabs(bzcx) + std::fabs(bxcz)) * std::fabs(a.y) +
                           (std::fabs(bxcy) + std::fabs(bycx)) * std::fabs(a.z);
  const double bound = internal::kOrient3dErrBound * permanent;
  if (det > bound) return Sign::kNegative;
  if (-det > bound) return Sign::kPositive;
  return -internal::Det3Exact(a, b, c);
}

// Position of p relative to the circumcircle of the positively oriented
// triangle t. Throws kContractViolation for a non-positive triangle.
CircleSide InCircumcircle(const UnitPoint& t1, const UnitPoint& t2,
                          const UnitPoint& t3, const UnitPoint& p);

// Same test without the orientation precondition check; callers guarantee
// that (t1, t2, t3) is positively oriented.
inline CircleSide InCircumcircleUnchecked(const Vec3& t1, const Vec3& t2,
                                          const Vec3& t3, const Vec3& p) {
  switch (Orient3d(t1, t2, t3, p)) {
    case Sign::kNegative:
      return CircleSide::kInside;
    case Sign::kPositive:
      return CircleSide::kOutside;
    default:
      return CircleSide::kOnCircle;
  }
}

// Great-circle arc length in [0, pi].
inline double GeodesicDistance(const Vec3& p, const Vec3& q) {
  return std::atan2(Norm(Cross(p, q)), Dot(p, q));
}

// Spherical circumcenter: the one of the two antipodal points equidistant to
// the three vertices that lies inside the circumcircle.
// Throws kDegenerateTriangle when the vertices' plane is undefined and
// kAmbiguousCircumcenter when that plane passes through the origin.
UnitPoint Circumcenter(const UnitPoint& p1, const UnitPoint& p2,
                       const UnitPoint& p3);

// Longitude/latitude in degrees to the unit sphere; lon 0 lat 0 is +x,
// lon 90 is +y, lat 90 is +z. Throws kOutOfRange for |lat| > 90.
UnitPoint ToUnitSphere(double lon_deg, double lat_deg);
LonLat ToLonLat(const Vec3& p);

// Area of the spherical triangle (solid angle), always non-negative.
double SphericalTriangleArea(const Vec3& a, const Vec3& b, const Vec3& c);

// True if the minor arcs ab and uv share a point, proper crossings decided
// exactly. Arcs sharing an endpoint count as intersecting; callers skip
// adjacent arcs themselves. Both arcs must be shorter than pi.
bool ArcsIntersect(const Vec3& a, const Vec3& b, const Vec3& u, const Vec3& v);

// Point at parameter u along the chord p(1-u) + q u, projected back on S.
inline UnitPoint ChordPoint(const Vec3& p, const Vec3& q, double u) {
  return UnitPoint((1.0 - u) * p + u * q);
}

}  // namespace spheremesh
