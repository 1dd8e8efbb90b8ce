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

// Command line driver: mesh, coarsen and bench subcommands.
//
// Exit codes: 0 success, 1 pipeline failure, 2 configuration error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spheremesh/error.h"
#include "spheremesh/parallel_kernel.h"
#include "spheremesh/pipeline.h"

namespace {

using spheremesh::Error;
using spheremesh::ErrorCode;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

spheremesh::LonLat ParseSeed(const std::string& text) {
  std::istringstream in(text);
  spheremesh::LonLat s;
  char comma = 0;
  std::string rest;
  if (!(in >> s.lon >> comma >> s.lat) || comma != ',' || (in >> rest)) {
    throw Error(ErrorCode::kConfigError, "seed must be 'lon,lat': " + text);
  }
  return s;
}

void AddPipelineOptions(CLI::App* cmd, spheremesh::PipelineConfig& cfg,
                        std::vector<std::string>& seeds) {
  cmd->add_option("--input,-i", cfg.inputs,
                  "Coastline file(s): .geojson/.json or poly text")
      ->required();
  cmd->add_option("--seed-lonlat", seeds, "Water seed as lon,lat in degrees");
  cmd->add_option("--hmin-m", cfg.h_min_m, "Smallest mesh size (m)")->required();
  cmd->add_option("--hmax-m", cfg.h_max_m,
                  "Largest mesh size (m); defaults to --hmin-m");
  cmd->add_option("--dmin-m", cfg.d_min_m, "Wall distance where the ramp starts (m)");
  cmd->add_option("--dmax-m", cfg.d_max_m, "Wall distance where the ramp ends (m)");
  cmd->add_option("--radius-m", cfg.radius_m, "Sphere radius (m)");
  cmd->add_option("--eps", cfg.eps, "Density table tolerance");
  cmd->add_option("--inset", cfg.inset_fraction, "Inset distance as a fraction of h");
  cmd->add_option("--threads", cfg.threads,
                  "Worker threads (default: SPHEREMESH_THREADS or all cores)");
  cmd->add_option("--output,-o", cfg.output, "Output file");
}

int RunPipelineCommand(spheremesh::PipelineConfig& cfg,
                       const std::vector<std::string>& seeds, bool quiet) {
  for (const std::string& s : seeds) cfg.seeds.push_back(ParseSeed(s));
  if (cfg.h_max_m == 0.0) cfg.h_max_m = cfg.h_min_m;
  std::ostream* log = quiet ? nullptr : &std::cout;
  const spheremesh::PipelineResult result = spheremesh::RunPipeline(cfg, log);
  if (log != nullptr) {
    *log << R"({"total_seconds":)" << result.total_seconds << "}\n";
  }
  return 0;
}

int RunBench(std::size_t n, const std::vector<int>& threads, std::uint64_t seed) {
  double baseline = 0.0;
  for (int m : threads) {
    if (m < 1) throw Error(ErrorCode::kConfigError, "thread counts must be positive");
    const spheremesh::ThroughputReport r =
        spheremesh::ThroughputBenchmark(n, m, baseline, seed);
    if (baseline == 0.0 && m == 1) baseline = r.seconds;
    std::cout << r.ToJson() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delaunay meshing of ocean domains on the sphere"};
  app.require_subcommand(1);

  spheremesh::PipelineConfig mesh_cfg;
  mesh_cfg.threads = spheremesh::DefaultThreadCount();
  std::vector<std::string> mesh_seeds;
  bool quiet = false;
  CLI::App* mesh = app.add_subcommand("mesh", "Full pipeline to a mesh file");
  AddPipelineOptions(mesh, mesh_cfg, mesh_seeds);
  mesh->add_option("--beta", mesh_cfg.beta, "Short-edge filter radius over h");
  mesh->add_option("--max-iter", mesh_cfg.max_iter, "Refinement iteration limit");
  mesh->add_option("--smooth-passes", mesh_cfg.smooth_passes, "Smoothing passes");
  mesh->add_flag("--keep-land", mesh_cfg.keep_land, "Also write land triangles");
  mesh->add_flag("--quiet,-q", quiet, "No JSON progress lines");

  spheremesh::PipelineConfig coarse_cfg;
  coarse_cfg.threads = spheremesh::DefaultThreadCount();
  coarse_cfg.stage = spheremesh::Stage::kCoarsenOnly;
  std::vector<std::string> coarse_seeds;
  CLI::App* coarsen =
      app.add_subcommand("coarsen", "Coarse water boundary only, written as polylines");
  AddPipelineOptions(coarsen, coarse_cfg, coarse_seeds);
  coarsen->add_flag("--quiet,-q", quiet, "No JSON progress lines");

  std::size_t bench_n = 1000000;
  std::vector<int> bench_threads{1};
  std::uint64_t bench_seed = 1;
  CLI::App* bench = app.add_subcommand("bench", "Delaunay kernel throughput");
  bench->add_option("--n", bench_n, "Number of uniform random points");
  bench->add_option("--threads", bench_threads, "Thread counts, e.g. 1,2,4,8")
      ->delimiter(',');
  bench->add_option("--seed", bench_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (mesh->parsed()) return RunPipelineCommand(mesh_cfg, mesh_seeds, quiet);
    if (coarsen->parsed()) return RunPipelineCommand(coarse_cfg, coarse_seeds, quiet);
    if (bench->parsed()) return RunBench(bench_n, bench_threads, bench_seed);
  } catch (const Error& e) {
    std::cerr << "spheremesh: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfigError ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "spheremesh: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
