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

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spheremesh/error.h"
#include "spheremesh/geomodel.h"
#include "spheremesh/geometry.h"
#include "spheremesh/one_dim.h"
#include "spheremesh/refine.h"

namespace spheremesh {

enum class Stage { kCoarsenOnly, kFull };

// Lengths are in metres on a sphere of radius radius_m and converted to arc
// length (radians) internally. h_min == h_max gives a uniform size field,
// otherwise h ramps from h_min at wall distance d_min to h_max at d_max.
struct PipelineConfig {
  std::vector<std::string> inputs;
  std::vector<LonLat> seeds;
  double h_min_m = 0.0;
  double h_max_m = 0.0;
  double d_min_m = 0.0;
  double d_max_m = 0.0;
  double radius_m = kEarthRadiusMetres;
  double eps = kDefaultDensityEps;
  double beta = 0.7;
  double inset_fraction = 0.1;
  int threads = 1;
  int max_iter = 30;
  int smooth_passes = 3;
  std::string output;  // empty: nothing written
  Stage stage = Stage::kFull;
  bool keep_land = false;

  // Throws kConfigError naming the first bad field.
  void Validate() const;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  std::string ToJson() const;
};

// A failure inside a stage; code() is the underlying error's.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "stage " + stage + ": " + cause.message()),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  std::vector<StageTiming> timings;
  double total_seconds = 0.0;
  PolylineSet raw;
  CoarseDomain domain;         // inset coarse boundary
  ExtractStats extract;
  ConstrainedMesh mesh;        // empty for kCoarsenOnly
  RefineResult refine;
  SmoothStats smooth;
};

// Size field of the configuration around the given coast samples, in radians.
SizeField MakeSizeField(const PipelineConfig& config,
                        std::span<const UnitPoint> coast);

// Runs every stage on already loaded coastlines; the config's inputs are not
// read. Stage timings and refinement iterations go to `log` as JSON lines.
PipelineResult RunPipeline(const PolylineSet& raw, const PipelineConfig& config,
                           std::ostream* log = nullptr);

// Reads the inputs, then as above.
PipelineResult RunPipeline(const PipelineConfig& config,
                           std::ostream* log = nullptr);

}  // namespace spheremesh
