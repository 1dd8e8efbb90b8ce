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

#include "spheremesh/pipeline.h"

#include <chrono>
#include <cmath>
#include <memory>
#include <ostream>

#include "json.hpp"
#include "spheremesh/mesh_io.h"
#include "spheremesh/polyline_io.h"
#include "spheremesh/predicates.h"

namespace spheremesh {

namespace {

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kConfigError, what);
}

using Clock = std::chrono::steady_clock;

class StageRunner {
 public:
  StageRunner(PipelineResult& result, std::ostream* log)
      : result_(result), log_(log) {}

  template <typename Fn>
  auto Run(const std::string& stage, Fn&& fn) {
    const auto t0 = Clock::now();
    auto record = [&] {
      StageTiming timing{stage,
                         std::chrono::duration<double>(Clock::now() - t0).count()};
      if (log_ != nullptr) *log_ << timing.ToJson() << "\n";
      result_.timings.push_back(std::move(timing));
    };
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        record();
      } else {
        auto value = fn();
        record();
        return value;
      }
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(stage, e);
    }
  }

 private:
  PipelineResult& result_;
  std::ostream* log_;
};

std::vector<UnitPoint> Seeds(const PipelineConfig& config) {
  std::vector<UnitPoint> seeds;
  for (const LonLat& s : config.seeds) seeds.push_back(ToUnitSphere(s.lon, s.lat));
  return seeds;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (seeds.empty()) BadConfig("at least one water seed point is required");
  for (const LonLat& s : seeds) {
    if (!(std::fabs(s.lat) <= 90.0) || !std::isfinite(s.lon)) {
      BadConfig("seed latitude must be within [-90, 90]");
    }
  }
  if (!(radius_m > 0.0)) BadConfig("radius must be positive");
  if (!(h_min_m > 0.0)) BadConfig("h_min must be positive");
  if (!(h_max_m >= h_min_m)) BadConfig("h_max must be at least h_min");
  if (h_max_m > h_min_m && !(d_min_m >= 0.0 && d_min_m < d_max_m)) {
    BadConfig("need 0 <= d_min < d_max");
  }
  if (!(eps > 0.0)) BadConfig("eps must be positive");
  if (!(beta >= 0.0 && beta < 1.0)) BadConfig("beta must be in [0, 1)");
  if (!(inset_fraction >= 0.0 && inset_fraction < 0.5)) {
    BadConfig("inset fraction must be in [0, 0.5)");
  }
  if (threads < 1) BadConfig("threads must be at least 1");
  if (max_iter < 1) BadConfig("max_iter must be at least 1");
  if (smooth_passes < 0) BadConfig("smooth passes must be non-negative");
  if (!output.empty()) {
    if (stage == Stage::kFull) MeshFormatFromPath(output);
  }
}

std::string StageTiming::ToJson() const {
  nlohmann::json j;
  j["stage"] = stage;
  j["seconds"] = seconds;
  return j.dump();
}

SizeField MakeSizeField(const PipelineConfig& config,
                        std::span<const UnitPoint> coast) {
  const double r = config.radius_m;
  if (config.h_max_m == config.h_min_m) return SizeField::Uniform(config.h_min_m / r);
  return SizeField::DistanceRamp(config.h_min_m / r, config.h_max_m / r,
                                 config.d_min_m / r, config.d_max_m / r,
                                 std::make_shared<const CoastIndex>(coast));
}

PipelineResult RunPipeline(const PolylineSet& raw, const PipelineConfig& config,
                           std::ostream* log) {
  config.Validate();
  const auto start = Clock::now();
  PipelineResult result;
  StageRunner stages(result, log);
  result.raw = raw;
  const std::vector<UnitPoint> seeds = Seeds(config);
  const int threads = config.threads;

  // Coarsening works against the raw coastline.
  const SizeField h_raw =
      stages.Run("size_field", [&] { return MakeSizeField(config, raw.pool); });
  const PolylineSet refined =
      stages.Run("refine_input", [&] { return RefineInputEdges(raw, h_raw); });
  const SphericalMesh all =
      stages.Run("triangulate_all", [&] { return TriangulatePolylines(refined, threads); });
  const std::vector<std::uint8_t> fill =
      stages.Run("flood_fill", [&] { return FloodFillWater(all, seeds, h_raw); });
  const CoarseDomain coarse = stages.Run("extract_boundary", [&] {
    return ExtractCoarseBoundary(all, fill, h_raw, seeds, &result.extract);
  });
  result.domain = stages.Run("inset", [&] {
    return InsetBoundary(coarse, h_raw, config.inset_fraction);
  });

  if (config.stage == Stage::kCoarsenOnly) {
    if (!config.output.empty()) {
      stages.Run("write", [&] {
        WritePolylines(result.domain.boundary, config.output,
                       PolylineFormatFromPath(config.output));
      });
    }
    result.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  }

  // The final field measures wall distance to the inset boundary.
  const SizeField h = stages.Run("size_field_final", [&] {
    return result.domain.boundary.pool.empty()
               ? h_raw
               : MakeSizeField(config, result.domain.boundary.pool);
  });
  BoundaryDiscretization boundary = stages.Run("discretize", [&] {
    return DiscretizeBoundary(result.domain, h, config.eps, threads);
  });
  stages.Run("empty_mesh", [&] {
    if (boundary.points.empty()) {
      // Nothing but water: start from an octahedron.
      boundary.points = {UnitPoint(1, 0, 0),  UnitPoint(-1, 0, 0), UnitPoint(0, 1, 0),
                         UnitPoint(0, -1, 0), UnitPoint(0, 0, 1),  UnitPoint(0, 0, -1)};
    }
    result.mesh = BuildEmptyMesh(boundary.points, boundary.edges, {threads});
    TagWater(result.mesh.mesh, seeds);
  });
  result.refine = stages.Run("refine", [&] {
    RefineOptions options;
    options.eps = config.eps;
    options.beta = config.beta;
    options.max_iter = config.max_iter;
    options.threads = threads;
    if (log != nullptr) {
      options.on_iteration = [log](const IterationStats& s) { *log << s.ToJson() << "\n"; };
    }
    RefineResult r = RefineLoop(result.mesh, h, options);
    if (!r.converged && log != nullptr) {
      *log << R"({"warning":"NoConvergence","iterations":)" << r.iterations.size()
           << "}\n";
    }
    return r;
  });
  result.smooth = stages.Run("smooth", [&] {
    SmoothOptions options;
    options.passes = config.smooth_passes;
    options.threads = threads;
    return Smooth(result.mesh, options);
  });
  if (!config.output.empty()) {
    stages.Run("write", [&] {
      WriteMesh(MakeMeshOutput(result.mesh.mesh, config.keep_land), config.output,
                MeshFormatFromPath(config.output));
    });
  }
  result.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

PipelineResult RunPipeline(const PipelineConfig& config, std::ostream* log) {
  config.Validate();
  if (config.inputs.empty()) BadConfig("no input file given");
  PipelineResult scratch;
  StageRunner stages(scratch, log);
  const auto t0 = Clock::now();
  const PolylineSet raw = stages.Run("ingest", [&] {
    PolylineSet all;
    for (const std::string& path : config.inputs) {
      const PolylineSet part = ReadPolylines(path);
      for (const Polyline& line : part.lines) {
        all.AddLine(part.Points(line), line.closed, line.tag);
      }
    }
    return all;
  });
  const double ingest = std::chrono::duration<double>(Clock::now() - t0).count();
  PipelineResult result = RunPipeline(raw, config, log);
  result.timings.insert(result.timings.begin(), scratch.timings.begin(),
                        scratch.timings.end());
  result.total_seconds += ingest;
  return result;
}

}  // namespace spheremesh
