# Copyright 2026 The SphereMesh Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Delaunay meshing of ocean domains on the unit sphere."""

from spheremesh._spheremesh import (
    SphereMeshError,
    benchmark,
    delaunay,
    density_table,
    hilbert_sort,
    in_circumcircle,
    orient3d,
    read_mesh,
    read_polylines,
    run_pipeline,
    subdivide,
    to_unit_sphere,
)

WATER = 1
LAND = 2

__all__ = [
    "LAND",
    "WATER",
    "SphereMeshError",
    "benchmark",
    "delaunay",
    "density_table",
    "hilbert_sort",
    "in_circumcircle",
    "orient3d",
    "read_mesh",
    "read_polylines",
    "run_pipeline",
    "subdivide",
    "to_unit_sphere",
]
