"""4D view state: plane rotations, panning, and the homogeneous view matrix.

Rotations are SO(2) rotations inside one of the six coordinate planes of
4D space, pre-multiplied onto the accumulated rotation (world-fixed
planes). Positive angle rotates the plane's first axis toward its second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# Re-orthonormalize the rotation once numerical drift exceeds this.
ORTHONORMALITY_DRIFT = 1e-10


class RotationPlane(Enum):
    XY = (0, 1)
    XZ = (0, 2)
    XT = (0, 3)
    YZ = (1, 2)
    YT = (1, 3)
    ZT = (2, 3)

    @property
    def axes(self) -> tuple:
        return self.value


def plane_rotation(plane: RotationPlane, angle: float) -> np.ndarray:
    """4x4 rotation by `angle` radians within the given coordinate plane."""
    i, j = plane.axes
    r = np.eye(4)
    c, s = math.cos(angle), math.sin(angle)
    r[i, i] = c
    r[j, j] = c
    r[i, j] = -s
    r[j, i] = s
    return r


def orthonormality_drift(rotation: np.ndarray) -> float:
    return float(np.max(np.abs(rotation.T @ rotation - np.eye(4))))


def _nearest_rotation(matrix: np.ndarray) -> np.ndarray:
    """Closest special-orthogonal matrix, via polar decomposition."""
    u, _, vt = np.linalg.svd(matrix)
    if np.linalg.det(u @ vt) < 0:
        u = u.copy()
        u[:, -1] *= -1.0
    return u @ vt


@dataclass(frozen=True)
class ViewState:
    """Immutable rotation + translation; mutations return a new state."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(4))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(4))

    def __post_init__(self):
        rotation = np.array(self.rotation, dtype=float)
        translation = np.array(self.translation, dtype=float)
        if rotation.shape != (4, 4):
            raise ValueError(f"rotation must be 4x4, got {rotation.shape}")
        if translation.shape != (4,):
            raise ValueError(f"translation must be a 4-vector, got "
                             f"{translation.shape}")
        if orthonormality_drift(rotation) > 1e-8 or np.linalg.det(rotation) < 0:
            raise ValueError("rotation is not special orthogonal")
        rotation.setflags(write=False)
        translation.setflags(write=False)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", translation)

    @property
    def view_matrix(self) -> np.ndarray:
        """5x5 homogeneous matrix: rotation top-left, translation top-right."""
        v = np.eye(5)
        v[:4, :4] = self.rotation
        v[:4, 4] = self.translation
        return v

    def to_dict(self) -> dict:
        return {"rotation": [float(x) for x in self.rotation.ravel()],
                "translation": [float(x) for x in self.translation]}

    @classmethod
    def from_dict(cls, data: dict) -> "ViewState":
        rotation = np.asarray(data["rotation"], dtype=float).reshape(4, 4)
        return cls(rotation=rotation,
                   translation=np.asarray(data["translation"], dtype=float))


def rotate(vs: ViewState, plane: RotationPlane, dangle: float) -> ViewState:
    """Apply an incremental plane rotation in the observer's frame."""
    rotation = plane_rotation(plane, dangle) @ vs.rotation
    if orthonormality_drift(rotation) > ORTHONORMALITY_DRIFT:
        rotation = _nearest_rotation(rotation)
    return ViewState(rotation=rotation, translation=vs.translation)


def translate(vs: ViewState, delta) -> ViewState:
    delta = np.asarray(delta, dtype=float)
    if delta.shape != (4,):
        raise ValueError(f"delta must be a 4-vector, got {delta.shape}")
    return ViewState(rotation=vs.rotation, translation=vs.translation + delta)


def apply_view(vs: ViewState, spatial) -> np.ndarray:
    """Rotate then translate every column of a 4 x N spatial matrix."""
    spatial = np.asarray(spatial, dtype=float)
    if spatial.ndim != 2 or spatial.shape[0] != 4:
        raise ValueError(f"expected a 4-row spatial matrix, got {spatial.shape}")
    return vs.rotation @ spatial + vs.translation[:, None]
