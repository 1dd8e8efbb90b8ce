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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "spheremesh/parallel_kernel.h"

namespace spheremesh {
namespace {

std::vector<std::size_t> RoundSizes(std::size_t n) {
  std::vector<std::size_t> sizes;
  for (const IndexRange& r : MakeBrioSchedule(n).rounds) sizes.push_back(r.size());
  return sizes;
}

TEST(HilbertIndexTest, VisitsEveryCellOfASmallCubeOnce) {
  // The top two levels of the 21-bit curve restricted to a 4^3 block of the
  // lowest cells: consecutive indices must be face neighbours.
  constexpr std::uint32_t kSide = 1u << 2;
  std::vector<std::pair<std::uint64_t, std::array<std::uint32_t, 3>>> cells;
  for (std::uint32_t x = 0; x < kSide; ++x)
    for (std::uint32_t y = 0; y < kSide; ++y)
      for (std::uint32_t z = 0; z < kSide; ++z)
        cells.push_back({HilbertIndex(x, y, z), {x, y, z}});
  std::sort(cells.begin(), cells.end());
  std::set<std::uint64_t> keys;
  for (const auto& c : cells) keys.insert(c.first);
  EXPECT_EQ(keys.size(), cells.size());
  // The first 64 cells of the curve fill the corner block.
  EXPECT_EQ(cells.back().first - cells.front().first, 63u);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    int manhattan = 0;
    for (int k = 0; k < 3; ++k) {
      manhattan += std::abs(static_cast<int>(cells[i].second[k]) -
                            static_cast<int>(cells[i - 1].second[k]));
    }
    EXPECT_EQ(manhattan, 1) << "step " << i;
  }
}

TEST(HilbertSortTest, SinglePointIsIdentity) {
  const std::vector<UnitPoint> pts{UnitPoint(0, 0, 1)};
  EXPECT_EQ(HilbertSort(pts), std::vector<std::uint32_t>{0});
}

TEST(HilbertSortTest, IsAStableDeterministicPermutation) {
  std::vector<UnitPoint> pts = UniformSpherePoints(5000, 3);
  pts.push_back(pts[10]);  // a duplicate keeps input order
  const std::vector<std::uint32_t> order = HilbertSort(pts);
  std::vector<std::uint32_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> iota(pts.size());
  std::iota(iota.begin(), iota.end(), 0u);
  EXPECT_EQ(sorted, iota);
  EXPECT_EQ(HilbertSort(pts), order);
  const auto first = std::find(order.begin(), order.end(), 10u);
  const auto dup = std::find(order.begin(), order.end(), 5000u);
  EXPECT_EQ(dup - first, 1);
}

TEST(HilbertSortTest, ConsecutivePointsAreTenTimesCloserThanRandomOrder) {
  const std::vector<UnitPoint> pts = UniformSpherePoints(10000, 5);
  auto mean_step = [&](const std::vector<std::uint32_t>& order) {
    double sum = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      sum += Norm(pts[order[i]].vec() - pts[order[i - 1]].vec());
    }
    return sum / (order.size() - 1);
  };
  std::vector<std::uint32_t> shuffled(pts.size());
  std::iota(shuffled.begin(), shuffled.end(), 0u);
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(1));
  EXPECT_LT(10.0 * mean_step(HilbertSort(pts)), mean_step(shuffled));
}

TEST(HilbertSortTest, BlocksHaveSmallBoundingBoxOverlap) {
  constexpr int kBlocks = 8;
  const std::vector<UnitPoint> pts = UniformSpherePoints(100000, 8);
  const std::vector<std::uint32_t> order = HilbertSort(pts);
  std::vector<Vec3> lo(kBlocks, Vec3{9, 9, 9}), hi(kBlocks, Vec3{-9, -9, -9});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t b = i * kBlocks / order.size();
    const Vec3& p = pts[order[i]];
    lo[b] = {std::min(lo[b].x, p.x), std::min(lo[b].y, p.y), std::min(lo[b].z, p.z)};
    hi[b] = {std::max(hi[b].x, p.x), std::max(hi[b].y, p.y), std::max(hi[b].z, p.z)};
  }
  auto volume = [](const Vec3& l, const Vec3& h) {
    return std::max(0.0, h.x - l.x) * std::max(0.0, h.y - l.y) *
           std::max(0.0, h.z - l.z);
  };
  double boxes = 0.0, overlaps = 0.0;
  int pairs = 0;
  for (int a = 0; a < kBlocks; ++a) {
    boxes += volume(lo[a], hi[a]);
    for (int b = a + 1; b < kBlocks; ++b, ++pairs) {
      const Vec3 l{std::max(lo[a].x, lo[b].x), std::max(lo[a].y, lo[b].y),
                   std::max(lo[a].z, lo[b].z)};
      const Vec3 h{std::min(hi[a].x, hi[b].x), std::min(hi[a].y, hi[b].y),
                   std::min(hi[a].z, hi[b].z)};
      overlaps += volume(l, h);
    }
  }
  EXPECT_LT(overlaps / pairs, 0.2 * boxes / kBlocks);
}

TEST(BrioScheduleTest, RoundSizes) {
  EXPECT_TRUE(MakeBrioSchedule(0).rounds.empty());
  EXPECT_EQ(RoundSizes(1024), std::vector<std::size_t>{1024});
  EXPECT_EQ(RoundSizes(10000), (std::vector<std::size_t>{1024, 2048, 4096, 2832}));
}

TEST(BrioScheduleTest, RoundsPartitionTheArray) {
  for (std::size_t n : {1u, 5u, 1023u, 1025u, 70000u}) {
    const BrioSchedule s = MakeBrioSchedule(n);
    std::size_t expect_begin = 0;
    for (const IndexRange& r : s.rounds) {
      EXPECT_EQ(r.begin, expect_begin);
      EXPECT_GT(r.size(), 0u);
      expect_begin = r.end;
    }
    EXPECT_EQ(expect_begin, n);
  }
}

TEST(BrioOrderTest, PermutationSortedWithinRounds) {
  const std::vector<UnitPoint> pts = UniformSpherePoints(5000, 2);
  BrioSchedule schedule;
  const std::vector<std::uint32_t> order = BrioOrder(pts, &schedule);
  EXPECT_EQ(order, BrioOrder(pts));
  std::vector<std::uint32_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i);
  ASSERT_EQ(schedule.rounds.size(), 3u);
  // Inside a round the order follows the curve.
  const IndexRange& r = schedule.rounds[1];
  std::vector<UnitPoint> round;
  for (std::size_t i = r.begin; i < r.end; ++i) round.push_back(pts[order[i]]);
  const std::vector<std::uint32_t> local = HilbertSort(round);
  for (std::uint32_t i = 0; i < local.size(); ++i) EXPECT_EQ(local[i], i);
}

}  // namespace
}  // namespace spheremesh
