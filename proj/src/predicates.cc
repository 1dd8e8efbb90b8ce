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

#include "spheremesh/predicates.h"

#include <cmath>

#include "spheremesh/error.h"

// Exact arithmetic on floating-point expansions. An expansion is a sum of
// doubles, non-overlapping and sorted by increasing magnitude; its sign is
// the sign of its largest component. Requires round-to-nearest IEEE doubles
// with no extended precision and no contraction of a*b+c into fma, which the
// build enforces for this file.

namespace spheremesh {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContractViolation: return "ContractViolation";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::kAmbiguousCircumcenter: return "AmbiguousCircumcenter";
    case ErrorCode::kDegenerateSeed: return "DegenerateSeed";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kEmptyIndex: return "EmptyIndex";
    case ErrorCode::kSeedNotFound: return "SeedNotFound";
    case ErrorCode::kEmptyFill: return "EmptyFill";
    case ErrorCode::kInsetCollision: return "InsetCollision";
    case ErrorCode::kRecoveryStall: return "RecoveryStall";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace internal {
namespace {

inline void TwoSum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void FastTwoSum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

inline void TwoProduct(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// a*b - c*d as a 4-component expansion.
inline void TwoTwoDiff(double a, double b, double c, double d, double* out) {
  double p1, p0, q1, q0;
  TwoProduct(a, b, p1, p0);
  TwoProduct(c, d, q1, q0);
  // (p1 + p0) - (q1 + q0), exactly.
  double i, j, k, l, m, n;
  TwoSum(p0, -q0, i, out[0]);
  TwoSum(p1, i, j, k);
  TwoSum(k, -q1, l, out[1]);
  TwoSum(j, l, m, n);
  out[2] = n;
  out[3] = m;
}

// Sum of two expansions, zero components dropped.
int ExpansionSum(const double* e, int elen, const double* f, int flen,
                 double* h) {
  double q, qnew, hh;
  int ei = 0, fi = 0, hi = 0;
  double enow = e[0], fnow = f[0];
  if ((fnow > enow) == (fnow > -enow)) {
    q = enow;
    enow = (++ei < elen) ? e[ei] : 0.0;
  } else {
    q = fnow;
    fnow = (++fi < flen) ? f[fi] : 0.0;
  }
  if (ei < elen && fi < flen) {
    if ((fnow > enow) == (fnow > -enow)) {
      FastTwoSum(enow, q, qnew, hh);
      enow = (++ei < elen) ? e[ei] : 0.0;
    } else {
      FastTwoSum(fnow, q, qnew, hh);
      fnow = (++fi < flen) ? f[fi] : 0.0;
    }
    q = qnew;
    if (hh != 0.0) h[hi++] = hh;
    while (ei < elen && fi < flen) {
      if ((fnow > enow) == (fnow > -enow)) {
        TwoSum(q, enow, qnew, hh);
        enow = (++ei < elen) ? e[ei] : 0.0;
      } else {
        TwoSum(q, fnow, qnew, hh);
        fnow = (++fi < flen) ? f[fi] : 0.0;
      }
      q = qnew;
      if (hh != 0.0) h[hi++] = hh;
    }
  }
  while (ei < elen) {
    TwoSum(q, enow, qnew, hh);
    enow = (++ei < elen) ? e[ei] : 0.0;
    q = qnew;
    if (hh != 0.0) h[hi++] = hh;
  }
  while (fi < flen) {
    TwoSum(q, fnow, qnew, hh);
    fnow = (++fi < flen) ? f[fi] : 0.0;
    q = qnew;
    if (hh != 0.0) h[hi++] = hh;
  }
  if (q != 0.0 || hi == 0) h[hi++] = q;
  return hi;
}

// Expansion times a double, zero components dropped.
int ScaleExpansion(const double* e, int elen, double b, double* h) {
  double q, sum, hh, product1, product0;
  int hi = 0;
  TwoProduct(e[0], b, q, hh);
  if (hh != 0.0) h[hi++] = hh;
  for (int ei = 1; ei < elen; ++ei) {
    TwoProduct(e[ei], b, product1, product0);
    TwoSum(q, product0, sum, hh);
    if (hh != 0.0) h[hi++] = hh;
    FastTwoSum(product1, sum, q, hh);
    if (hh != 0.0) h[hi++] = hh;
  }
  if (q != 0.0 || hi == 0) h[hi++] = q;
  return hi;
}

inline Sign ExpansionSign(const double* e, int len) {
  const double top = e[len - 1];
  if (top > 0.0) return Sign::kPositive;
  if (top < 0.0) return Sign::kNegative;
  return Sign::kZero;
}

void Negate(double* e, int len) {
  for (int i = 0; i < len; ++i) e[i] = -e[i];
}

}  // namespace

Sign Det3Exact(const Vec3& a, const Vec3& b, const Vec3& c) {
  // det = ax*(by cz - bz cy) - bx*(ay cz - az cy) + cx*(ay bz - az by)
  double bc[4], ac[4], ab[4];
  TwoTwoDiff(b.y, c.z, b.z, c.y, bc);
  TwoTwoDiff(a.y, c.z, a.z, c.y, ac);
  TwoTwoDiff(a.y, b.z, a.z, b.y, ab);
  double t1[8], t2[8], t3[8];
  const int l1 = ScaleExpansion(bc, 4, a.x, t1);
  const int l2 = ScaleExpansion(ac, 4, -b.x, t2);
  const int l3 = ScaleExpansion(ab, 4, c.x, t3);
  double t12[16], det[24];
  const int l12 = ExpansionSum(t1, l1, t2, l2, t12);
  const int len = ExpansionSum(t12, l12, t3, l3, det);
  return ExpansionSign(det, len);
}

Sign Orient3dExact(const Vec3& pa, const Vec3& pb, const Vec3& pc,
                   const Vec3& pd) {
  // The exact orientation evaluates det[a - d; b - d; c - d] from the raw
  // coordinates; the 4x4 determinant wanted here is its negation.
  double ab[4], bc[4], cd[4], da[4], ac[4], bd[4];
  TwoTwoDiff(pa.x, pb.y, pb.x, pa.y, ab);
  TwoTwoDiff(pb.x, pc.y, pc.x, pb.y, bc);
  TwoTwoDiff(pc.x, pd.y, pd.x, pc.y, cd);
  TwoTwoDiff(pd.x, pa.y, pa.x, pd.y, da);
  TwoTwoDiff(pa.x, pc.y, pc.x, pa.y, ac);
  TwoTwoDiff(pb.x, pd.y, pd.x, pb.y, bd);

  double temp8[8];
  double cda[12], dab[12], abc[12], bcd[12];
  int templen = ExpansionSum(cd, 4, da, 4, temp8);
  const int cdalen = ExpansionSum(temp8, templen, ac, 4, cda);
  templen = ExpansionSum(da, 4, ab, 4, temp8);
  const int dablen = ExpansionSum(temp8, templen, bd, 4, dab);
  Negate(bd, 4);
  Negate(ac, 4);
  templen = ExpansionSum(ab, 4, bc, 4, temp8);
  const int abclen = ExpansionSum(temp8, templen, ac, 4, abc);
  templen = ExpansionSum(bc, 4, cd, 4, temp8);
  const int bcdlen = ExpansionSum(temp8, templen, bd, 4, bcd);

  double adet[24], bdet[24], cdet[24], ddet[24];
  const int alen = ScaleExpansion(bcd, bcdlen, pa.z, adet);
  const int blen = ScaleExpansion(cda, cdalen, -pb.z, bdet);
  const int clen = ScaleExpansion(dab, dablen, pc.z, cdet);
  const int dlen = ScaleExpansion(abc, abclen, -pd.z, ddet);

  double abdet[48], cddet[48], deter[96];
  const int ablen = ExpansionSum(adet, alen, bdet, blen, abdet);
  const int cdlen = ExpansionSum(cdet, clen, ddet, dlen, cddet);
  const int deterlen = ExpansionSum(abdet, ablen, cddet, cdlen, deter);
  return -ExpansionSign(deter, deterlen);
}

}  // namespace internal

CircleSide InCircumcircle(const UnitPoint& t1, const UnitPoint& t2,
                          const UnitPoint& t3, const UnitPoint& p) {
  if (OrientOrigin(t1, t2, t3) != Sign::kPositive) {
    throw Error(ErrorCode::kContractViolation,
                "InCircumcircle requires a positively oriented triangle");
  }
  return InCircumcircleUnchecked(t1, t2, t3, p);
}

UnitPoint Circumcenter(const UnitPoint& p1, const UnitPoint& p2,
                       const UnitPoint& p3) {
  const Vec3 normal = Cross(p2.vec() - p1.vec(), p3.vec() - p1.vec());
  const double len = Norm(normal);
  if (len < 1e-14) {
    throw Error(ErrorCode::kDegenerateTriangle,
                "triangle vertices do not define a plane");
  }
  const Sign side = OrientOrigin(p1, p2, p3);
  if (side == Sign::kZero) {
    throw Error(ErrorCode::kAmbiguousCircumcenter,
                "circumcircle is a great circle; both poles are equidistant");
  }
  // The circumcircle plane is {x : n.x = n.p1}; the closer pole is the unit
  // normal pointing to the side of the plane away from the origin.
  const Vec3 unit = (1.0 / len) * normal;
  return UnitPoint(Dot(unit, p1.vec()) > 0.0 ? unit : -unit);
}

UnitPoint ToUnitSphere(double lon_deg, double lat_deg) {
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0) || !std::isfinite(lon_deg)) {
    throw Error(ErrorCode::kOutOfRange,
                "latitude must lie in [-90, 90] and longitude be finite");
  }
  constexpr double kDeg = kPi / 180.0;
  const double lon = lon_deg * kDeg;
  const double lat = lat_deg * kDeg;
  const double c = std::cos(lat);
  return UnitPoint(c * std::cos(lon), c * std::sin(lon), std::sin(lat));
}

LonLat ToLonLat(const Vec3& p) {
  constexpr double kRad = 180.0 / kPi;
  return {std::atan2(p.y, p.x) * kRad,
          std::atan2(p.z, std::hypot(p.x, p.y)) * kRad};
}

namespace {

// Whether x, known to lie on the great circle of the minor arc ab, lies on
// the arc itself.
bool OnMinorArc(const Vec3& a, const Vec3& b, const Vec3& x) {
  const Vec3 n = Cross(a, b);
  return Dot(Cross(a, x), n) >= 0.0 && Dot(Cross(x, b), n) >= 0.0;
}

}  // namespace

bool ArcsIntersect(const Vec3& a, const Vec3& b, const Vec3& u,
                   const Vec3& v) {
  const Sign s1 = OrientOrigin(a, b, u);
  const Sign s2 = OrientOrigin(a, b, v);
  const Sign s3 = OrientOrigin(u, v, a);
  const Sign s4 = OrientOrigin(u, v, b);
  if (s1 != Sign::kZero && s1 == s2) return false;
  if (s3 != Sign::kZero && s3 == s4) return false;
  if (s1 != Sign::kZero && s2 != Sign::kZero && s3 != Sign::kZero &&
      s4 != Sign::kZero) {
    // Each arc crosses the other's great circle once; they meet at the same
    // one of the two antipodal circle intersections iff s3 = -s1.
    return s3 == -s1;
  }
  // Touching or collinear configurations, rare enough to settle numerically.
  if (a == u || a == v || b == u || b == v) return true;
  const Vec3 x = Cross(Cross(a, b), Cross(u, v));
  if (Norm(x) < 1e-300) {
    // Same great circle: overlap iff an endpoint of one lies on the other.
    return OnMinorArc(a, b, u) || OnMinorArc(a, b, v) || OnMinorArc(u, v, a) ||
           OnMinorArc(u, v, b);
  }
  for (const Vec3& c : {x, -x}) {
    if (OnMinorArc(a, b, c) && OnMinorArc(u, v, c)) return true;
  }
  return false;
}

double SphericalTriangleArea(const Vec3& a, const Vec3& b, const Vec3& c) {
  // Van Oosterom & Strackee.
  const double numer = std::fabs(Dot(a, Cross(b, c)));
  const double denom = 1.0 + Dot(a, b) + Dot(b, c) + Dot(c, a);
  return 2.0 * std::atan2(numer, denom);
}

}  // namespace spheremesh
