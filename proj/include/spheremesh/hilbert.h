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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spheremesh/geometry.h"

namespace spheremesh {

inline constexpr int kHilbertBitsPerAxis = 21;

struct HilbertKey {
  std::uint64_t key = 0;
  std::uint32_t point_index = 0;
};

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Rounds of a biased randomized insertion order: prefix ranges of the
// reordered array, the first one holding kFirstBrioRound points and each next
// one doubling, the last one taking the remainder.
struct BrioSchedule {
  std::vector<IndexRange> rounds;
};

inline constexpr std::size_t kFirstBrioRound = 1024;

// Index along a 3D Hilbert curve of depth kHilbertBitsPerAxis for integer
// cell coordinates in [0, 2^21).
std::uint64_t HilbertIndex(std::uint32_t x, std::uint32_t y, std::uint32_t z);

// Keys of the points inside the cube enclosing their bounding box.
std::vector<HilbertKey> ComputeHilbertKeys(std::span<const UnitPoint> points);

// Permutation of [0, n) ordering the points along the curve; ties keep input
// order.
std::vector<std::uint32_t> HilbertSort(std::span<const UnitPoint> points);

BrioSchedule MakeBrioSchedule(std::size_t n);

// Deterministic BRIO permutation: a fixed-seed shuffle, split into the rounds
// of MakeBrioSchedule, each round Hilbert-sorted.
std::vector<std::uint32_t> BrioOrder(std::span<const UnitPoint> points,
                                     BrioSchedule* schedule = nullptr);

}  // namespace spheremesh
