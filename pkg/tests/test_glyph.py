import json
from base64 import b64decode
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from ndswarm import CameraConfig, SceneFrame
from ndswarm.glyph import (LOD_LEVELS, GlyphError, export_gltf,
                           generate_glyph_mesh, glyph_mesh_cached)

FIXTURE = Path(__file__).parent / "data" / "neutral_head_lod0.json"
LIP_COLOR = (0.62, 0.22, 0.22)


def directed_edges(triangles):
    edges = Counter()
    for a, b, c in triangles:
        for edge in ((a, b), (b, c), (c, a)):
            edges[edge] += 1
    return edges


def assert_watertight(mesh):
    edges = directed_edges(mesh.triangles)
    assert all(count == 1 for count in edges.values()), \
        "a directed edge is used by more than one triangle"
    assert all((b, a) in edges for (a, b) in edges), \
        "an edge is missing its reverse: surface is not closed"


class TestNeutralGolden:
    def test_matches_fixture_exactly(self):
        golden = json.loads(FIXTURE.read_text())
        mesh = generate_glyph_mesh([0.5] * 10, lod=0)
        assert mesh.lod == golden["lod"]
        expected_vertices = np.array(
            [[float(x) for x in v] for v in golden["vertices"]])
        expected_colors = np.array(
            [[float(x) for x in c] for c in golden["colors"]])
        assert np.array_equal(mesh.vertices, expected_vertices)
        assert np.array_equal(mesh.colors, expected_colors)
        assert mesh.triangles.tolist() == golden["triangles"]


class TestMeshProperties:
    def test_lowest_lod_vertex_budget(self):
        mesh = generate_glyph_mesh([0.5] * 10, lod=0)
        assert len(mesh.vertices) <= 500

    @pytest.mark.parametrize("lod", LOD_LEVELS)
    def test_watertight_at_every_lod(self, lod):
        rng = np.random.default_rng(50 + lod)
        for _ in range(4):
            mesh = generate_glyph_mesh(rng.random(10), lod)
            assert_watertight(mesh)

    def test_extreme_params_watertight(self):
        for params in (np.zeros(10), np.ones(10)):
            assert_watertight(generate_glyph_mesh(params, 0))

    def test_outward_orientation(self):
        mesh = generate_glyph_mesh([0.5] * 10, 0)
        v = mesh.vertices
        volume = sum(np.linalg.det(np.stack([v[a], v[b], v[c]]))
                     for a, b, c in mesh.triangles) / 6.0
        assert volume > 0

    def test_elongation_scales_bounding_box(self):
        tall = generate_glyph_mesh([0.5] * 8 + [1.0, 0.5], 0)
        flat = generate_glyph_mesh([0.5] * 8 + [0.0, 0.5], 0)
        height = lambda m: m.vertices[:, 1].max() - m.vertices[:, 1].min()
        ratio = height(tall) / height(flat)
        assert abs(ratio - 1.4 / 0.8) < 1e-9

    def test_smile_turns_mouth_corners_up(self):
        params = [0.5] * 10
        params[5], params[6] = 1.0, 0.0  # full smile, no frown
        mesh = generate_glyph_mesh(params, 0)
        mouth = np.all(np.isclose(mesh.colors, LIP_COLOR), axis=1)
        pts = mesh.vertices[mouth]
        span = pts[:, 0].max()
        mid_y = pts[np.abs(pts[:, 0]) < span * 0.2][:, 1].mean()
        corner_y = pts[np.abs(pts[:, 0]) > span * 0.8][:, 1].mean()
        assert mid_y < corner_y

    def test_frown_turns_mouth_corners_down(self):
        params = [0.5] * 10
        params[5], params[6] = 0.0, 1.0
        mesh = generate_glyph_mesh(params, 0)
        mouth = np.all(np.isclose(mesh.colors, LIP_COLOR), axis=1)
        pts = mesh.vertices[mouth]
        span = pts[:, 0].max()
        mid_y = pts[np.abs(pts[:, 0]) < span * 0.2][:, 1].mean()
        corner_y = pts[np.abs(pts[:, 0]) > span * 0.8][:, 1].mean()
        assert mid_y > corner_y

    def test_eye_separation_grows(self):
        wide = generate_glyph_mesh([0.5, 0.5, 1.0] + [0.5] * 7, 0)
        narrow = generate_glyph_mesh([0.5, 0.5, 0.0] + [0.5] * 7, 0)
        # eye whites are the brightest vertices
        bright = lambda m: m.vertices[np.all(m.colors > 0.9, axis=1)]
        assert bright(wide)[:, 0].max() > bright(narrow)[:, 0].max()

    def test_rejects_bad_params(self):
        with pytest.raises(GlyphError):
            generate_glyph_mesh([0.5] * 9, 0)
        with pytest.raises(GlyphError):
            generate_glyph_mesh([1.5] + [0.5] * 9, 0)
        with pytest.raises(GlyphError):
            generate_glyph_mesh([0.5] * 10, lod=7)

    def test_cache_returns_same_object_for_quantized_params(self):
        a = glyph_mesh_cached([0.50001] * 10, 0)
        b = glyph_mesh_cached([0.49999] * 10, 0)
        assert a is b


def small_frame(n=3):
    rng = np.random.default_rng(60)
    return SceneFrame(seq=1, n_total=n, positions=rng.standard_normal((3, n)),
                      depths=rng.uniform(-1, 1, n), params=rng.random((10, n)),
                      labels=tuple(f"p{i}" for i in range(n)),
                      indices=np.arange(n))


def validate_gltf(doc):
    """Structural glTF 2.0 checks: required properties, buffer consistency,
    index bounds."""
    assert doc["asset"]["version"] == "2.0"
    assert "scene" in doc and doc["scene"] < len(doc["scenes"])
    for scene in doc["scenes"]:
        for node in scene["nodes"]:
            assert node < len(doc["nodes"])
    buffers = []
    for buffer in doc["buffers"]:
        prefix = "data:application/octet-stream;base64,"
        assert buffer["uri"].startswith(prefix)
        blob = b64decode(buffer["uri"][len(prefix):])
        assert len(blob) == buffer["byteLength"]
        buffers.append(blob)
    for view in doc["bufferViews"]:
        assert view["byteOffset"] + view["byteLength"] <= \
            len(buffers[view["buffer"]])
    component_size = {5126: 4, 5125: 4}
    type_size = {"VEC3": 3, "SCALAR": 1}
    for accessor in doc["accessors"]:
        view = doc["bufferViews"][accessor["bufferView"]]
        needed = accessor["count"] * component_size[accessor["componentType"]] \
            * type_size[accessor["type"]]
        assert needed <= view["byteLength"]
    for mesh in doc["meshes"]:
        for prim in mesh["primitives"]:
            assert prim["mode"] == 4
            pos = doc["accessors"][prim["attributes"]["POSITION"]]
            assert "min" in pos and "max" in pos
            idx = doc["accessors"][prim["indices"]]
            assert idx["count"] % 3 == 0
    return buffers


class TestGltfExport:
    def test_structure_and_geometry(self, tmp_path):
        frame = small_frame()
        path = tmp_path / "scene.gltf"
        export_gltf(frame, path, camera=CameraConfig(), lod=0)
        doc = json.loads(path.read_text())
        buffers = validate_gltf(doc)

        pos_acc = doc["accessors"][0]
        idx_acc = doc["accessors"][2]
        positions = np.frombuffer(
            buffers[0][:pos_acc["count"] * 12], dtype=np.float32
        ).reshape(-1, 3)
        idx_view = doc["bufferViews"][idx_acc["bufferView"]]
        indices = np.frombuffer(
            buffers[0][idx_view["byteOffset"]:idx_view["byteOffset"]
                       + idx_view["byteLength"]], dtype=np.uint32)
        assert indices.max() < len(positions)
        np.testing.assert_allclose(positions.min(axis=0), pos_acc["min"],
                                   rtol=1e-6)
        np.testing.assert_allclose(positions.max(axis=0), pos_acc["max"],
                                   rtol=1e-6)

    def test_empty_frame_exports_valid_document(self, tmp_path):
        frame = SceneFrame(seq=0, n_total=4, positions=np.zeros((3, 0)),
                           depths=np.zeros(0), params=np.zeros((10, 0)),
                           labels=None, indices=np.zeros(0, dtype=int))
        path = tmp_path / "empty.gltf"
        export_gltf(frame, path)
        doc = json.loads(path.read_text())
        assert doc["asset"]["version"] == "2.0"
        assert doc["meshes"] == [] and doc["buffers"] == []

    def test_perspective_scales_avatars(self, tmp_path):
        # two identical avatars, one closer to the camera plane
        frame = SceneFrame(seq=0, n_total=2, positions=np.zeros((3, 2)),
                           depths=np.array([0.0, 2.0]),
                           params=np.full((10, 2), 0.5), labels=None,
                           indices=np.arange(2))
        path = tmp_path / "two.gltf"
        export_gltf(frame, path, camera=CameraConfig(distance=4.0))
        doc = json.loads(path.read_text())
        buffers = validate_gltf(doc)
        count = doc["accessors"][0]["count"]
        positions = np.frombuffer(buffers[0][:count * 12],
                                  dtype=np.float32).reshape(-1, 3)
        half = count // 2
        size_near = positions[:half, 1].max() - positions[:half, 1].min()
        size_far = positions[half:, 1].max() - positions[half:, 1].min()
        np.testing.assert_allclose(size_far / size_near, 2.0, rtol=1e-5)

    def test_bad_glyph_size_raises(self, tmp_path):
        with pytest.raises(GlyphError):
            export_gltf(small_frame(), tmp_path / "x.gltf", glyph_size=0.0)
