"""Thick-slice filtering: keep points near the viewing hyperplane."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .view import ViewState

DEFAULT_THRESHOLD = 1.5


class SlabMode(Enum):
    # Normal vector is the canonical T axis applied to viewed points, or the
    # last rotation row applied to pre-view points (translation-unaware).
    POST_VIEW = "post_view"
    PRE_VIEW = "pre_view"


@dataclass(frozen=True)
class SlabConfig:
    threshold: float = DEFAULT_THRESHOLD
    mode: SlabMode = SlabMode.POST_VIEW

    def __post_init__(self):
        if not (isinstance(self.threshold, (int, float))
                and math.isfinite(self.threshold) and self.threshold > 0):
            raise ValueError("slab threshold must be a positive finite number")
        if not isinstance(self.mode, SlabMode):
            raise ValueError(f"unknown slab mode {self.mode!r}")


def slab_mask(points, cfg: SlabConfig, vs: ViewState) -> np.ndarray:
    """True where |normal . point| < threshold (strict inequality).

    `points` must be the viewed matrix for POST_VIEW and the pre-view
    spatial matrix for PRE_VIEW.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] != 4:
        raise ValueError(f"expected a 4-row point matrix, got {points.shape}")
    if cfg.mode is SlabMode.POST_VIEW:
        distances = points[3]
    else:
        distances = vs.rotation[3] @ points
    return np.abs(distances) < cfg.threshold


def filter_visible(points, visuals, labels, mask):
    """Select the masked columns of points and visuals (plus matching labels),
    preserving order. Returns (points, visuals, labels, source_indices)."""
    points = np.asarray(points, dtype=float)
    visuals = np.asarray(visuals, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    n = points.shape[1]
    if visuals.shape[1] != n or mask.shape != (n,):
        raise ValueError(f"length mismatch: {points.shape[1]} points, "
                         f"{visuals.shape[1]} visual columns, {mask.shape} mask")
    if labels is not None and len(labels) != n:
        raise ValueError(f"length mismatch: {len(labels)} labels for {n} points")
    indices = np.nonzero(mask)[0]
    kept_labels = None if labels is None else tuple(labels[i] for i in indices)
    return points[:, indices], visuals[:, indices], kept_labels, indices
