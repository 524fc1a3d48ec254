"""Scene frames: perspective projection, avatar parameters, canonical JSON.

A frame is the renderable snapshot of one pipeline state: visible points
with 3D positions, depth along the projective T axis, and ten [0,1] avatar
parameters each. Serialization is canonical (fixed key order, 9 significant
digits) so identical states produce identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .assignment import M_VISUAL
from .projection import ProjectedData
from .slab import SlabConfig, filter_visible, slab_mask
from .view import ViewState, apply_view

DEFAULT_SIGMA_RANGE = 3.0


@dataclass(frozen=True)
class CameraConfig:
    """Perspective along T: scale = distance / (distance - t)."""

    distance: float = 4.0
    near_epsilon: float = 1e-6

    def __post_init__(self):
        if not (math.isfinite(self.distance) and self.distance > 0):
            raise ValueError("camera distance must be positive and finite")
        if not (math.isfinite(self.near_epsilon) and self.near_epsilon > 0):
            raise ValueError("near epsilon must be positive and finite")


@dataclass(frozen=True, eq=False)
class SceneFrame:
    """Visible avatars of one pipeline state.

    positions is 3 x V, params is m x V with every value in [0,1], depths
    holds the original T coordinate after the view transform, and indices
    maps each visible column back to its source point.
    """

    seq: int
    n_total: int
    positions: np.ndarray
    depths: np.ndarray
    params: np.ndarray
    labels: tuple | None
    indices: np.ndarray

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        depths = np.array(self.depths, dtype=float)
        params = np.array(self.params, dtype=float)
        indices = np.array(self.indices, dtype=int)
        v = positions.shape[1] if positions.ndim == 2 else -1
        if positions.ndim != 2 or positions.shape[0] != 3:
            raise ValueError(f"positions must be 3 x V, got {positions.shape}")
        if params.shape != (M_VISUAL, v) or depths.shape != (v,) \
                or indices.shape != (v,):
            raise ValueError("positions, depths, params, and indices disagree "
                             "on the number of visible points")
        if v > self.n_total:
            raise ValueError(f"{v} visible points exceed n_total={self.n_total}")
        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(depths))):
            raise ValueError("positions and depths must be finite")
        if params.size and (params.min() < 0.0 or params.max() > 1.0):
            raise ValueError("avatar params must lie in [0, 1]")
        if self.labels is not None and len(self.labels) != v:
            raise ValueError(f"{len(self.labels)} labels for {v} visible points")
        for name, arr in (("positions", positions), ("depths", depths),
                          ("params", params), ("indices", indices)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_visible(self) -> int:
        return self.positions.shape[1]


def perspective_project(view_points, cam: CameraConfig):
    """Project 4 x V viewed points to 3D: (x,y,z) * d/(d - t).

    Points with t >= d - near_epsilon would blow up or invert; they are
    culled. Returns (positions, depths, keep_mask).
    """
    view_points = np.asarray(view_points, dtype=float)
    if view_points.ndim != 2 or view_points.shape[0] != 4:
        raise ValueError(f"expected 4-row view matrix, got {view_points.shape}")
    t = view_points[3]
    keep = t < cam.distance - cam.near_epsilon
    scale = cam.distance / (cam.distance - t[keep])
    return view_points[:3, keep] * scale, t[keep].copy(), keep


def avatar_params(visual_values, sigma_range: float = DEFAULT_SIGMA_RANGE):
    """Map standardized visual values into [0,1]: 0.5 + v / (2 * sigma_range),
    clamped. A degenerate (constant-zero) row maps to 0.5."""
    if not (math.isfinite(sigma_range) and sigma_range > 0):
        raise ValueError("sigma range must be positive and finite")
    visual_values = np.asarray(visual_values, dtype=float)
    return np.clip(0.5 + visual_values / (2.0 * sigma_range), 0.0, 1.0)


def build_frame(projected: ProjectedData, vs: ViewState, slab_cfg: SlabConfig,
                cam: CameraConfig, labels=None, seq: int = 0,
                sigma_range: float = DEFAULT_SIGMA_RANGE) -> SceneFrame:
    """Compose view, slab, perspective, and parameter calibration into one
    frame. Deterministic for fixed inputs; source indices survive for
    pick/hover."""
    n_total = projected.n_points
    if labels is not None and len(labels) != n_total:
        raise ValueError(f"{len(labels)} labels for {n_total} points")
    viewed = apply_view(vs, projected.spatial)
    mask = slab_mask(viewed if slab_cfg.mode.value == "post_view"
                     else projected.spatial, slab_cfg, vs)
    points, visuals, kept_labels, indices = filter_visible(
        viewed, projected.visual, labels, mask)
    positions, depths, keep = perspective_project(points, cam)
    if kept_labels is not None:
        kept_labels = tuple(lab for lab, k in zip(kept_labels, keep) if k)
    return SceneFrame(
        seq=seq,
        n_total=n_total,
        positions=positions,
        depths=depths,
        params=avatar_params(visuals[:, keep], sigma_range),
        labels=kept_labels,
        indices=indices[keep],
    )


def _fmt(value: float) -> str:
    # 9 significant digits; normalize -0.0 so parse/serialize round-trips
    # are byte-stable.
    if value == 0.0:
        value = 0.0
    return format(float(value), ".9g")


def serialize_frame(frame: SceneFrame) -> bytes:
    """Canonical JSON bytes: fixed key order, floats at 9 significant digits."""
    parts = [f'{{"seq":{frame.seq},"n_total":{frame.n_total},'
             f'"n_visible":{frame.n_visible},"points":[']
    points = []
    for col in range(frame.n_visible):
        x, y, z = frame.positions[:, col]
        label = ("null" if frame.labels is None
                 else json.dumps(frame.labels[col]))
        params = ",".join(_fmt(p) for p in frame.params[:, col])
        points.append(
            f'{{"i":{int(frame.indices[col])},'
            f'"pos":[{_fmt(x)},{_fmt(y)},{_fmt(z)}],'
            f'"depth":{_fmt(frame.depths[col])},'
            f'"params":[{params}],'
            f'"label":{label}}}')
    parts.append(",".join(points))
    parts.append("]}")
    return "".join(parts).encode("utf-8")


def parse_frame(data) -> SceneFrame:
    """Inverse of serialize_frame."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    doc = json.loads(data)
    points = doc["points"]
    if doc["n_visible"] != len(points):
        raise ValueError(f"frame claims {doc['n_visible']} visible points, "
                         f"carries {len(points)}")
    v = len(points)
    positions = np.zeros((3, v))
    depths = np.zeros(v)
    params = np.zeros((M_VISUAL, v))
    indices = np.zeros(v, dtype=int)
    labels = []
    for col, point in enumerate(points):
        positions[:, col] = point["pos"]
        depths[col] = point["depth"]
        params[:, col] = point["params"]
        indices[col] = point["i"]
        labels.append(point["label"])
    has_labels = any(lab is not None for lab in labels)
    return SceneFrame(seq=doc["seq"], n_total=doc["n_total"],
                      positions=positions, depths=depths, params=params,
                      labels=tuple(labels) if has_labels else None,
                      indices=indices)
