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

#include "spheremesh/hilbert.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace spheremesh {

std::uint64_t HilbertIndex(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  // Axes to the transposed index by Gray-code transform, then interleave.
  std::uint32_t axes[3] = {x, y, z};
  constexpr std::uint32_t kTop = 1u << (kHilbertBitsPerAxis - 1);
  for (std::uint32_t q = kTop; q > 1; q >>= 1) {
    const std::uint32_t p = q - 1;
    for (int i = 0; i < 3; ++i) {
      if (axes[i] & q) {
        axes[0] ^= p;
      } else {
        const std::uint32_t t = (axes[0] ^ axes[i]) & p;
        axes[0] ^= t;
        axes[i] ^= t;
      }
    }
  }
  axes[1] ^= axes[0];
  axes[2] ^= axes[1];
  std::uint32_t t = 0;
  for (std::uint32_t q = kTop; q > 1; q >>= 1) {
    if (axes[2] & q) t ^= q - 1;
  }
  for (auto& a : axes) a ^= t;

  std::uint64_t key = 0;
  for (int bit = kHilbertBitsPerAxis - 1; bit >= 0; --bit) {
    for (int i = 0; i < 3; ++i) {
      key = (key << 1) | ((axes[i] >> bit) & 1u);
    }
  }
  return key;
}

std::vector<HilbertKey> ComputeHilbertKeys(std::span<const UnitPoint> points) {
  std::vector<HilbertKey> keys(points.size());
  if (points.empty()) return keys;
  Vec3 lo = points[0].vec(), hi = points[0].vec();
  for (const UnitPoint& p : points) {
    lo = {std::min(lo.x, p.x()), std::min(lo.y, p.y()), std::min(lo.z, p.z())};
    hi = {std::max(hi.x, p.x()), std::max(hi.y, p.y()), std::max(hi.z, p.z())};
  }
  const double side = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  constexpr double kCells = static_cast<double>((1u << kHilbertBitsPerAxis) - 1);
  const double scale = side > 0.0 ? kCells / side : 0.0;
  auto cell = [&](double v, double origin) {
    const double c = std::floor((v - origin) * scale);
    return static_cast<std::uint32_t>(std::clamp(c, 0.0, kCells));
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    const UnitPoint& p = points[i];
    keys[i].key = HilbertIndex(cell(p.x(), lo.x), cell(p.y(), lo.y),
                               cell(p.z(), lo.z));
    keys[i].point_index = static_cast<std::uint32_t>(i);
  }
  return keys;
}

std::vector<std::uint32_t> HilbertSort(std::span<const UnitPoint> points) {
  std::vector<HilbertKey> keys = ComputeHilbertKeys(points);
  std::sort(keys.begin(), keys.end(),
            [](const HilbertKey& a, const HilbertKey& b) {
              return a.key != b.key ? a.key < b.key
                                    : a.point_index < b.point_index;
            });
  std::vector<std::uint32_t> order(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) order[i] = keys[i].point_index;
  return order;
}

BrioSchedule MakeBrioSchedule(std::size_t n) {
  BrioSchedule schedule;
  std::size_t begin = 0;
  std::size_t size = kFirstBrioRound;
  while (begin < n) {
    const std::size_t end = std::min(n, begin + size);
    schedule.rounds.push_back({begin, end});
    begin = end;
    size *= 2;
  }
  return schedule;
}

std::vector<std::uint32_t> BrioOrder(std::span<const UnitPoint> points,
                                     BrioSchedule* schedule_out) {
  const std::size_t n = points.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  // Fisher-Yates with a fixed-seed engine; mt19937_64's output sequence is
  // specified by the standard, so the shuffle is reproducible everywhere.
  std::mt19937_64 rng(0x5eed5eedULL);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  BrioSchedule schedule = MakeBrioSchedule(n);
  std::vector<UnitPoint> round_points;
  std::vector<std::uint32_t> round_ids;
  for (const IndexRange& r : schedule.rounds) {
    round_points.clear();
    round_ids.assign(order.begin() + r.begin, order.begin() + r.end);
    for (std::uint32_t id : round_ids) round_points.push_back(points[id]);
    const std::vector<std::uint32_t> local = HilbertSort(round_points);
    for (std::size_t i = 0; i < local.size(); ++i) {
      order[r.begin + i] = round_ids[local[i]];
    }
  }
  if (schedule_out != nullptr) *schedule_out = std::move(schedule);
  return order;
}

}  // namespace spheremesh
