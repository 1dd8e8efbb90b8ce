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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "spheremesh/geometry.h"

namespace spheremesh {

// Nearest-sample queries over points of S. Euclidean and geodesic nearest
// neighbours coincide on the sphere, so a 3D R-tree answers both.
class CoastIndex {
 public:
  explicit CoastIndex(std::span<const UnitPoint> samples);
  ~CoastIndex();
  CoastIndex(CoastIndex&&) noexcept;
  CoastIndex& operator=(CoastIndex&&) noexcept;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::vector<UnitPoint>& samples() const;

  // Index of the nearest sample. Throws kEmptyIndex on an empty index.
  std::size_t Nearest(const Vec3& x) const;
  // Geodesic distance to the nearest sample.
  double Distance(const Vec3& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline double WallDistance(const CoastIndex& index, const Vec3& x) {
  return index.Distance(x);
}

// The distance ramp: h_min below d_min, h_max above d_max, linear between.
double RampValue(double d, double h_min, double h_max, double d_min,
                 double d_max);

// Mesh-size function h(x) on S, in unit-sphere arc length. Copies share the
// definition and the evaluation counter.
class SizeField {
 public:
  enum class Kind { kUniform, kDistanceRamp, kCompositeMin };

  // Throws kConfigError unless h > 0.
  static SizeField Uniform(double h);
  // Throws kConfigError unless 0 < h_min <= h_max and 0 <= d_min < d_max, and
  // kEmptyIndex for an empty coast.
  static SizeField DistanceRamp(double h_min, double h_max, double d_min,
                                double d_max,
                                std::shared_ptr<const CoastIndex> coast);
  // Pointwise minimum. Throws kConfigError for no parts.
  static SizeField CompositeMin(std::vector<SizeField> parts);

  double Eval(const Vec3& x) const;
  double operator()(const Vec3& x) const { return Eval(x); }

  Kind kind() const;
  double h_min() const;
  double h_max() const;
  // Ramp parameters; meaningful for kDistanceRamp only.
  double d_min() const;
  double d_max() const;
  const CoastIndex* coast() const;

  // Number of Eval calls on this field and its copies since the last reset.
  std::uint64_t EvalCount() const {
    return counter_->load(std::memory_order_relaxed);
  }
  void ResetEvalCount() const { counter_->store(0, std::memory_order_relaxed); }

 private:
  struct Node;
  explicit SizeField(std::shared_ptr<const Node> node);
  static double EvalNode(const Node& node, const Vec3& x);

  std::shared_ptr<const Node> node_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

}  // namespace spheremesh
