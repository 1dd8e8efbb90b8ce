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

import math
import os

import numpy as np
import pytest

import spheremesh

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def circle(lon0, lat0, r, n):
    # Small circle as lon/lat degrees; fine for the low latitudes used here.
    a = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    return np.stack([lon0 + r * np.cos(a), lat0 + r * np.sin(a)], axis=1)


def random_sphere(n, seed=0):
    p = np.random.default_rng(seed).normal(size=(n, 3))
    return p / np.linalg.norm(p, axis=1, keepdims=True)


def test_orient3d():
    x, y, z, o = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    assert spheremesh.orient3d(x, z, y, o) == "positive"
    assert spheremesh.orient3d(x, y, z, o) == "negative"
    assert spheremesh.orient3d(x, y, (2, -1, 0), (0.5, 0.5, 0)) == "zero"


def test_in_circumcircle():
    t = [(1, 0, 0), (0, 0, 1), (0, 1, 0)]  # positive: orient3d(x, z, y, o) > 0
    assert spheremesh.in_circumcircle(*t, (1, 1, 1)) == "inside"
    assert spheremesh.in_circumcircle(*t, (-1, -1, -1)) == "outside"


def test_hilbert_sort_is_a_permutation():
    order = spheremesh.hilbert_sort(random_sphere(1000))
    assert sorted(order.tolist()) == list(range(1000))


def test_delaunay_euler_count():
    pts = random_sphere(500, 1)
    vertices, triangles = spheremesh.delaunay(pts, threads=2)
    assert vertices.shape == (500, 3)
    assert triangles.shape == (2 * 500 - 4, 3)
    # Every triangle is positive: orient3d(a, b, c, origin) > 0, that is
    # det[a, b, c] < 0.
    a, b, c = (vertices[triangles[:, k]] for k in range(3))
    assert np.all(np.einsum("ij,ij->i", np.cross(a, b), c) < 0)


def test_delaunay_rejects_hemisphere_without_helpers():
    pts = spheremesh.to_unit_sphere(circle(0, 0, 5, 20))
    with pytest.raises(spheremesh.SphereMeshError) as info:
        spheremesh.delaunay(pts)
    assert info.value.code == "DegenerateInput"
    vertices, triangles = spheremesh.delaunay(pts, allow_helper_vertices=True)
    assert len(vertices) > 20


def test_density_table_and_subdivide():
    table = spheremesh.density_table(10.0, lambda u: 1.0)
    assert table["evaluations"] == 3
    assert table["delta"][-1] == pytest.approx(10.0)
    ts = spheremesh.subdivide(table["t"], table["delta"])
    assert ts == pytest.approx([k / 10 for k in range(1, 10)])


def test_run_pipeline_annulus():
    result = spheremesh.run_pipeline(
        [circle(0, 0, 10, 400), circle(0, 0, 3, 120)],
        seeds=[(0.0, 6.0)],
        h_min_m=150e3,
    )
    mesh = result["mesh"]
    assert result["converged"]
    assert len(result["coarse"]) == 2
    assert mesh["triangles"].shape[1] == 3
    assert np.all(mesh["regions"] == spheremesh.WATER)
    assert np.allclose(np.linalg.norm(mesh["xyz"], axis=1), 1.0)
    assert sum(result["timings"].values()) == pytest.approx(result["total_seconds"], rel=0.05)


def test_run_pipeline_writes_and_reads(tmp_path):
    lines = spheremesh.read_polylines(os.path.join(DATA, "basin.poly"))
    assert lines[0]["closed"]
    out = str(tmp_path / "basin.vtk")
    result = spheremesh.run_pipeline(
        [lines[0]["lonlat"]], seeds=[(0.0, 0.0)], h_min_m=100e3, h_max_m=300e3,
        d_max_m=600e3, output=out)
    back = spheremesh.read_mesh(out)
    assert len(back["triangles"]) == len(result["mesh"]["triangles"])


def test_missing_seed_is_a_config_error():
    with pytest.raises(spheremesh.SphereMeshError) as info:
        spheremesh.run_pipeline([circle(0, 0, 10, 100)], seeds=[], h_min_m=100e3)
    assert info.value.code == "ConfigError"


def test_coarsen_only():
    result = spheremesh.run_pipeline(
        [circle(0, 0, 10, 400)], seeds=[(0.0, 0.0)], h_min_m=150e3, coarsen_only=True)
    assert "mesh" not in result
    assert result["coarse"][0]["closed"]


def test_benchmark():
    report = spheremesh.benchmark(20000)
    assert report["n"] == 20000
    assert report["points_per_second"] > 0
