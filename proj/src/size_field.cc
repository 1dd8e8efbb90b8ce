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

#include "spheremesh/size_field.h"

#include <algorithm>
#include <limits>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "spheremesh/error.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

using RPoint = bg::model::point<double, 3, bg::cs::cartesian>;
using RValue = std::pair<RPoint, std::size_t>;

struct CoastIndex::Impl {
  std::vector<UnitPoint> samples;
  bgi::rtree<RValue, bgi::rstar<16>> tree;
};

CoastIndex::CoastIndex(std::span<const UnitPoint> samples)
    : impl_(std::make_unique<Impl>()) {
  impl_->samples.assign(samples.begin(), samples.end());
  std::vector<RValue> values;
  values.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    values.emplace_back(RPoint(samples[i].x(), samples[i].y(), samples[i].z()),
                        i);
  }
  // Packing constructor: bulk-loaded, better balanced than repeated inserts.
  impl_->tree = bgi::rtree<RValue, bgi::rstar<16>>(values.begin(), values.end());
}

CoastIndex::~CoastIndex() = default;
CoastIndex::CoastIndex(CoastIndex&&) noexcept = default;
CoastIndex& CoastIndex::operator=(CoastIndex&&) noexcept = default;

std::size_t CoastIndex::size() const { return impl_->samples.size(); }

const std::vector<UnitPoint>& CoastIndex::samples() const {
  return impl_->samples;
}

std::size_t CoastIndex::Nearest(const Vec3& x) const {
  if (impl_->samples.empty()) {
    throw Error(ErrorCode::kEmptyIndex, "coast index has no samples");
  }
  RValue hit;
  impl_->tree.query(bgi::nearest(RPoint(x.x, x.y, x.z), 1), &hit);
  return hit.second;
}

double CoastIndex::Distance(const Vec3& x) const {
  return GeodesicDistance(x, impl_->samples[Nearest(x)]);
}

double RampValue(double d, double h_min, double h_max, double d_min,
                 double d_max) {
  if (d <= d_min) return h_min;
  if (d >= d_max) return h_max;
  return h_min + (h_max - h_min) * (d - d_min) / (d_max - d_min);
}

struct SizeField::Node {
  Kind kind = Kind::kUniform;
  double h_min = 0.0;
  double h_max = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;
  std::shared_ptr<const CoastIndex> coast;
  std::vector<SizeField> parts;
};

SizeField::SizeField(std::shared_ptr<const Node> node)
    : node_(std::move(node)),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

SizeField SizeField::Uniform(double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kConfigError, "h must be positive");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kUniform;
  node->h_min = node->h_max = h;
  return SizeField(std::move(node));
}

SizeField SizeField::DistanceRamp(double h_min, double h_max, double d_min,
                                  double d_max,
                                  std::shared_ptr<const CoastIndex> coast) {
  if (!(h_min > 0.0 && h_min <= h_max)) {
    throw Error(ErrorCode::kConfigError, "need 0 < h_min <= h_max");
  }
  if (!(d_min >= 0.0 && d_min < d_max)) {
    throw Error(ErrorCode::kConfigError, "need 0 <= d_min < d_max");
  }
  if (coast == nullptr || coast->empty()) {
    throw Error(ErrorCode::kEmptyIndex, "distance field needs coast samples");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kDistanceRamp;
  node->h_min = h_min;
  node->h_max = h_max;
  node->d_min = d_min;
  node->d_max = d_max;
  node->coast = std::move(coast);
  return SizeField(std::move(node));
}

SizeField SizeField::CompositeMin(std::vector<SizeField> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::kConfigError, "composite field without parts");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kCompositeMin;
  node->h_min = std::numeric_limits<double>::infinity();
  node->h_max = 0.0;
  for (const SizeField& f : parts) {
    node->h_min = std::min(node->h_min, f.h_min());
    node->h_max = std::max(node->h_max, f.h_max());
  }
  node->parts = std::move(parts);
  return SizeField(std::move(node));
}

double SizeField::EvalNode(const Node& node, const Vec3& x) {
  switch (node.kind) {
    case Kind::kUniform:
      return node.h_min;
    case Kind::kDistanceRamp:
      return RampValue(node.coast->Distance(x), node.h_min, node.h_max,
                       node.d_min, node.d_max);
    case Kind::kCompositeMin: {
      double h = std::numeric_limits<double>::infinity();
      for (const SizeField& f : node.parts) h = std::min(h, EvalNode(*f.node_, x));
      return h;
    }
  }
  return node.h_max;
}

double SizeField::Eval(const Vec3& x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return EvalNode(*node_, x);
}

SizeField::Kind SizeField::kind() const { return node_->kind; }
double SizeField::h_min() const { return node_->h_min; }
double SizeField::h_max() const { return node_->h_max; }
double SizeField::d_min() const { return node_->d_min; }
double SizeField::d_max() const { return node_->d_max; }
const CoastIndex* SizeField::coast() const { return node_->coast.get(); }

}  // namespace spheremesh
