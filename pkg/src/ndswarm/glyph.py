"""Parametric avatar heads: simplified closed meshes plus glTF 2.0 export.

Every avatar is assembled from closed primitive surfaces (ellipsoids,
cones, capped tubes, capped shells), so the combined mesh is watertight at
every level of detail: each edge borders exactly two triangles. Geometry
is deliberately low-poly so thousands of instances render interactively.
"""

from __future__ import annotations

import base64
import colorsys
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .assignment import M_VISUAL, VisualFeature
from .scene import CameraConfig, SceneFrame

LOD_LEVELS = (0, 1, 2)

# Head-local geometry ranges (head radius 1, +y up, +z facing the viewer).
ELONGATION_RANGE = (0.8, 1.4)     # whole-glyph y-scale endpoints
EYE_SEPARATION_RANGE = (0.30, 0.80)
NOSE_LENGTH_RANGE = (0.12, 0.57)
MOUTH_HALF_WIDTH_RANGE = (0.12, 0.50)
MOUTH_BEND_MAX = 0.22             # y-offset of corners vs midpoint at |curvature|=1
HAIR_CAP_ANGLE_RANGE = (0.5, 1.5)  # polar radians covered by the hair shell

_SKIN_LIGHT = (0.99, 0.86, 0.67)
_SKIN_DARK = (0.38, 0.24, 0.13)
_IRIS_LIGHT = (0.56, 0.75, 0.95)
_IRIS_DARK = (0.24, 0.13, 0.05)
_EYE_WHITE = (0.96, 0.96, 0.96)
_LIP_COLOR = (0.62, 0.22, 0.22)


class GlyphError(ValueError):
    """Raised for out-of-range avatar parameters or LOD levels."""


@dataclass(frozen=True, eq=False)
class GlyphMesh:
    vertices: np.ndarray   # (V, 3)
    triangles: np.ndarray  # (T, 3) indices
    colors: np.ndarray     # (V, 3) linear RGB in [0,1]
    lod: int

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=float)
        triangles = np.array(self.triangles, dtype=np.int64)
        colors = np.array(self.colors, dtype=float)
        if triangles.size and (triangles.min() < 0
                               or triangles.max() >= len(vertices)):
            raise GlyphError("triangle index out of range")
        if colors.shape != vertices.shape:
            raise GlyphError("need one RGB color per vertex")
        for name, arr in (("vertices", vertices), ("triangles", triangles),
                          ("colors", colors)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _lerp(a, b, t):
    return tuple(x + (y - x) * t for x, y in zip(a, b))


def _span(lo_hi, t):
    lo, hi = lo_hi
    return lo + (hi - lo) * t


class _Builder:
    """Accumulates primitive surfaces into one vertex/triangle/color soup."""

    def __init__(self):
        self.vertices = []
        self.triangles = []
        self.colors = []

    def _push(self, verts, tris, color):
        base = len(self.vertices)
        self.vertices.extend(verts)
        self.colors.extend([color] * len(verts))
        self.triangles.extend([(a + base, b + base, c + base)
                               for a, b, c in tris])

    def ellipsoid(self, center, radii, n_az, n_rings, color):
        cx, cy, cz = center
        rx, ry, rz = radii
        verts = [(cx, cy + ry, cz)]
        for i in range(1, n_rings):
            polar = math.pi * i / n_rings
            y = math.cos(polar)
            ring = math.sin(polar)
            for j in range(n_az):
                az = 2.0 * math.pi * j / n_az
                verts.append((cx + rx * ring * math.cos(az), cy + ry * y,
                              cz + rz * ring * math.sin(az)))
        verts.append((cx, cy - ry, cz))
        top, bottom = 0, len(verts) - 1
        ring0 = lambda i, j: 1 + (i - 1) * n_az + (j % n_az)
        tris = []
        for j in range(n_az):
            tris.append((top, ring0(1, j + 1), ring0(1, j)))
        for i in range(1, n_rings - 1):
            for j in range(n_az):
                a, b = ring0(i, j), ring0(i, j + 1)
                c, d = ring0(i + 1, j + 1), ring0(i + 1, j)
                tris.append((a, b, c))
                tris.append((a, c, d))
        for j in range(n_az):
            tris.append((bottom, ring0(n_rings - 1, j),
                         ring0(n_rings - 1, j + 1)))
        self._push(verts, tris, color)

    def cone(self, base_center, axis, length, radius, n_az, color):
        axis = np.asarray(axis, float)
        axis = axis / np.linalg.norm(axis)
        ref = np.array([0.0, 1.0, 0.0])
        if abs(float(axis @ ref)) > 0.9:
            ref = np.array([1.0, 0.0, 0.0])
        e1 = np.cross(axis, ref)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(axis, e1)
        base_center = np.asarray(base_center, float)
        verts = []
        for j in range(n_az):
            az = 2.0 * math.pi * j / n_az
            verts.append(tuple(base_center + radius * (math.cos(az) * e1
                                                       + math.sin(az) * e2)))
        apex = len(verts)
        verts.append(tuple(base_center + length * axis))
        center = len(verts)
        verts.append(tuple(base_center))
        tris = []
        for j in range(n_az):
            a, b = j, (j + 1) % n_az
            tris.append((apex, a, b))
            tris.append((center, b, a))
        self._push(verts, tris, color)

    def capped_tube(self, path, radius, n_sides, color):
        path = np.asarray(path, float)
        n_pts = len(path)
        rings = []
        verts = []
        ref = np.array([0.0, 1.0, 0.0])
        for k in range(n_pts):
            ahead = path[min(k + 1, n_pts - 1)]
            behind = path[max(k - 1, 0)]
            tangent = ahead - behind
            tangent /= np.linalg.norm(tangent)
            e1 = np.cross(tangent, ref)
            if np.linalg.norm(e1) < 1e-9:
                e1 = np.cross(tangent, np.array([1.0, 0.0, 0.0]))
            e1 /= np.linalg.norm(e1)
            e2 = np.cross(tangent, e1)
            ring = []
            for j in range(n_sides):
                az = 2.0 * math.pi * j / n_sides
                ring.append(len(verts))
                verts.append(tuple(path[k] + radius * (math.cos(az) * e1
                                                       + math.sin(az) * e2)))
            rings.append(ring)
        start_cap = len(verts)
        verts.append(tuple(path[0]))
        end_cap = len(verts)
        verts.append(tuple(path[-1]))
        tris = []
        for k in range(n_pts - 1):
            for j in range(n_sides):
                a, b = rings[k][j], rings[k][(j + 1) % n_sides]
                c, d = rings[k + 1][(j + 1) % n_sides], rings[k + 1][j]
                tris.append((a, b, c))
                tris.append((a, c, d))
        for j in range(n_sides):
            tris.append((start_cap, rings[0][(j + 1) % n_sides], rings[0][j]))
            tris.append((end_cap, rings[-1][j], rings[-1][(j + 1) % n_sides]))
        self._push(verts, tris, color)

    def cap_shell(self, center, radii, polar_max, n_az, n_rings, color):
        """Spherical cap around +y, closed by a flat disk at its rim."""
        cx, cy, cz = center
        rx, ry, rz = radii
        verts = [(cx, cy + ry, cz)]
        for i in range(1, n_rings + 1):
            polar = polar_max * i / n_rings
            y = math.cos(polar)
            ring = math.sin(polar)
            for j in range(n_az):
                az = 2.0 * math.pi * j / n_az
                verts.append((cx + rx * ring * math.cos(az), cy + ry * y,
                              cz + rz * ring * math.sin(az)))
        rim_y = cy + ry * math.cos(polar_max)
        disk_center = len(verts)
        verts.append((cx, rim_y, cz))
        top = 0
        ring0 = lambda i, j: 1 + (i - 1) * n_az + (j % n_az)
        tris = []
        for j in range(n_az):
            tris.append((top, ring0(1, j + 1), ring0(1, j)))
        for i in range(1, n_rings):
            for j in range(n_az):
                a, b = ring0(i, j), ring0(i, j + 1)
                c, d = ring0(i + 1, j + 1), ring0(i + 1, j)
                tris.append((a, b, c))
                tris.append((a, c, d))
        for j in range(n_az):
            tris.append((disk_center, ring0(n_rings, j), ring0(n_rings, j + 1)))
        self._push(verts, tris, color)


def _front_z(x, y, floor=0.25):
    """z of the head surface at (x, y), slightly proud of it."""
    return math.sqrt(max(1.0 - x * x - y * y, floor)) * 1.01


def generate_glyph_mesh(params, lod: int = 0) -> GlyphMesh:
    """Build the avatar head for ten [0,1] parameters (VisualFeature order)."""
    params = np.asarray(params, dtype=float)
    if params.shape != (M_VISUAL,):
        raise GlyphError(f"expected {M_VISUAL} parameters, got {params.shape}")
    if not np.all(np.isfinite(params)) or params.min() < 0 or params.max() > 1:
        raise GlyphError("avatar parameters must lie in [0, 1]")
    if lod not in LOD_LEVELS:
        raise GlyphError(f"lod must be one of {LOD_LEVELS}")
    p = {feature: float(params[feature.value]) for feature in VisualFeature}
    mult = 2 ** lod

    skin = _lerp(_SKIN_LIGHT, _SKIN_DARK, p[VisualFeature.Skin_C])
    hair = colorsys.hsv_to_rgb(0.75 * p[VisualFeature.Hair_C], 0.75, 0.55)
    iris = _lerp(_IRIS_LIGHT, _IRIS_DARK, p[VisualFeature.Iris_C])

    b = _Builder()
    b.ellipsoid((0, 0, 0), (1, 1, 1), 12 * mult, 9 * mult, skin)

    separation = _span(EYE_SEPARATION_RANGE, p[VisualFeature.Eye_S])
    eye_y, eye_r = 0.28, 0.155
    for side in (-1.0, 1.0):
        ex = side * separation / 2.0
        center = np.array([ex, eye_y, _front_z(ex, eye_y)])
        b.ellipsoid(center, (eye_r,) * 3, 8 * mult, 5 * mult, _EYE_WHITE)
        outward = center / np.linalg.norm(center)
        b.ellipsoid(center + 0.115 * outward, (0.075,) * 3,
                    6 * mult, 4 * mult, iris)

    nose_len = _span(NOSE_LENGTH_RANGE, p[VisualFeature.Nose_L])
    b.cone((0, 0.02, 0.96), (0, 0, 1), nose_len, 0.10, 10 * mult,
           tuple(c * 0.93 for c in skin))

    half_width = _span(MOUTH_HALF_WIDTH_RANGE, p[VisualFeature.Mouth_W])
    bend = MOUTH_BEND_MAX * (p[VisualFeature.Smile] - p[VisualFeature.Frown])
    n_seg = 8 * mult
    path = []
    for k in range(n_seg + 1):
        s = -1.0 + 2.0 * k / n_seg
        x = half_width * s
        y = -0.42 + bend * s * s
        path.append((x, y, _front_z(x, y)))
    b.capped_tube(path, 0.045, 4 * mult, _LIP_COLOR)

    cap_angle = _span(HAIR_CAP_ANGLE_RANGE, p[VisualFeature.Hair_L])
    b.cap_shell((0, 0, 0), (1.06, 1.06, 1.06), cap_angle, 12 * mult,
                4 * mult, hair)

    vertices = np.array(b.vertices, dtype=float)
    vertices[:, 1] *= _span(ELONGATION_RANGE, p[VisualFeature.Face_Elong])
    return GlyphMesh(vertices=vertices,
                     triangles=np.array(b.triangles, dtype=np.int64),
                     colors=np.array(b.colors, dtype=float), lod=lod)


@lru_cache(maxsize=4096)
def _cached_mesh(quantized_params, lod):
    return generate_glyph_mesh(np.array(quantized_params), lod)


def glyph_mesh_cached(params, lod: int = 0) -> GlyphMesh:
    """Mesh for params quantized to 1/1000; repeated lookups hit a cache."""
    key = tuple(round(min(max(float(x), 0.0), 1.0), 3) for x in params)
    return _cached_mesh(key, lod)


def export_gltf(frame: SceneFrame, path, camera: CameraConfig | None = None,
                lod: int = 0, glyph_size: float = 0.08) -> None:
    """Write the frame as a static glTF 2.0 file: all avatars merged into one
    colored triangle mesh, each scaled by its perspective factor."""
    if glyph_size <= 0:
        raise GlyphError("glyph size must be positive")
    all_vertices = []
    all_colors = []
    all_triangles = []
    offset = 0
    for col in range(frame.n_visible):
        mesh = glyph_mesh_cached(frame.params[:, col], lod)
        scale = glyph_size
        if camera is not None:
            scale *= camera.distance / (camera.distance - frame.depths[col])
        all_vertices.append(mesh.vertices * scale + frame.positions[:, col])
        all_colors.append(mesh.colors)
        all_triangles.append(mesh.triangles + offset)
        offset += len(mesh.vertices)

    doc = {
        "asset": {"version": "2.0", "generator": "ndswarm"},
        "scene": 0,
        "scenes": [{"nodes": []}],
        "nodes": [],
        "meshes": [],
        "accessors": [],
        "bufferViews": [],
        "buffers": [],
    }
    if frame.n_visible:
        positions = np.vstack(all_vertices).astype(np.float32)
        colors = np.vstack(all_colors).astype(np.float32)
        indices = np.vstack(all_triangles).astype(np.uint32).ravel()
        pos_bytes = positions.tobytes()
        color_bytes = colors.tobytes()
        idx_bytes = indices.tobytes()
        blob = pos_bytes + color_bytes + idx_bytes
        doc["buffers"] = [{
            "byteLength": len(blob),
            "uri": "data:application/octet-stream;base64,"
                   + base64.b64encode(blob).decode("ascii"),
        }]
        doc["bufferViews"] = [
            {"buffer": 0, "byteOffset": 0, "byteLength": len(pos_bytes),
             "target": 34962},
            {"buffer": 0, "byteOffset": len(pos_bytes),
             "byteLength": len(color_bytes), "target": 34962},
            {"buffer": 0, "byteOffset": len(pos_bytes) + len(color_bytes),
             "byteLength": len(idx_bytes), "target": 34963},
        ]
        doc["accessors"] = [
            {"bufferView": 0, "byteOffset": 0, "componentType": 5126,
             "count": len(positions), "type": "VEC3",
             "min": [float(x) for x in positions.min(axis=0)],
             "max": [float(x) for x in positions.max(axis=0)]},
            {"bufferView": 1, "byteOffset": 0, "componentType": 5126,
             "count": len(colors), "type": "VEC3"},
            {"bufferView": 2, "byteOffset": 0, "componentType": 5125,
             "count": len(indices), "type": "SCALAR"},
        ]
        doc["meshes"] = [{"primitives": [{
            "attributes": {"POSITION": 0, "COLOR_0": 1},
            "indices": 2, "mode": 4,
        }]}]
        doc["nodes"] = [{"mesh": 0, "name": "avatars"}]
        doc["scenes"] = [{"nodes": [0]}]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
