"""Filtering-matrix construction and the spatial/visual data split.

The filtering matrix has one row per output feature: 4 spatial rows, then
10 visual rows. Explicitly assigned dimensions get one-hot rows; principal
components of the anonymous dimensions fill leftover rows; anything still
unfilled stays zero. Applying it to the data and standardizing row-wise
yields the spatial block (shifted to center 0.5) and the visual block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .assignment import (K_SPATIAL, M_VISUAL, Category, DimensionAssignment,
                         SpatialAxis, VisualFeature, counts, validate)
from .dataset import Dataset

# Rows whose population std falls below this are pinned to a constant
# instead of being standardized.
DEGENERATE_STD = 1e-12


class ProjectionError(ValueError):
    """Raised for unusable assignments or mismatched shapes."""


@dataclass(frozen=True)
class PcaComponent:
    """Row kind for a principal-component row; rank 0 is the strongest."""

    rank: int


@dataclass(frozen=True)
class FilterMatrix:
    """(k+m) x n matrix plus per-row provenance.

    row_kinds[i] is a SpatialAxis, a VisualFeature, a PcaComponent, or None
    for an all-zero row. pca_loadings[rank] lists the (dimension index,
    coefficient) pairs of that component over the anonymous dimensions.
    """

    matrix: np.ndarray
    row_kinds: tuple
    pca_loadings: tuple

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "row_kinds", tuple(self.row_kinds))
        object.__setattr__(self, "pca_loadings", tuple(self.pca_loadings))


@dataclass(frozen=True)
class ProjectedData:
    """Standardized pipeline output, split into spatial and visual blocks."""

    spatial: np.ndarray
    visual: np.ndarray
    row_stats: tuple
    degenerate_rows: frozenset

    def __post_init__(self):
        for field in ("spatial", "visual"):
            arr = np.array(getattr(self, field), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, field, arr)

    @property
    def n_points(self) -> int:
        return self.spatial.shape[1]


@dataclass(frozen=True)
class PcaReport:
    """Principal-component loadings over a chosen set of input dimensions."""

    dimension_names: tuple
    loadings: np.ndarray
    explained_variance: tuple
    scope: str

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "dimensions": list(self.dimension_names),
            "explained_variance": [float(v) for v in self.explained_variance],
            "loadings": [[float(v) for v in row] for row in self.loadings],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def pca_components(block, n_components: int):
    """Principal directions of a dimensions-by-points block.

    Rows are centered, then decomposed by SVD. Returns (loadings,
    singular_values) with loadings[r] the unit-norm left singular vector of
    rank r; components beyond the numeric rank are not returned. Sign is
    fixed so each loading's largest-magnitude entry is non-negative.
    """
    block = np.asarray(block, dtype=float)
    if block.ndim != 2:
        raise ProjectionError("block must be a 2-d matrix")
    if n_components < 0 or n_components > block.shape[0]:
        raise ProjectionError(
            f"cannot take {n_components} components from {block.shape[0]} rows")
    centered = block - block.mean(axis=1, keepdims=True)
    u, s, _ = np.linalg.svd(centered, full_matrices=False)
    tol = max(centered.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.count_nonzero(s > tol))
    r = min(n_components, rank)
    loadings = u[:, :r].T.copy()
    for row in loadings:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return loadings, s[:r].copy()


def build_filter_matrix(ds: Dataset, asgn: DimensionAssignment) -> FilterMatrix:
    """Place one-hot rows for assigned dimensions, then fill empty rows with
    principal components of the anonymous block, strongest first, in
    ascending row order (spatial slots before visual slots)."""
    violations = validate(asgn, ds.n_dims)
    if violations:
        raise ProjectionError("invalid assignment: "
                              + "; ".join(v.message for v in violations))
    c = counts(asgn)
    if c.n_spatial + c.n_visual + c.n_anonymous == 0:
        raise ProjectionError("nothing to project: every dimension is skipped")

    n = ds.n_dims
    matrix = np.zeros((K_SPATIAL + M_VISUAL, n))
    kinds: list = [None] * (K_SPATIAL + M_VISUAL)
    for axis, dim in asgn.spatial_dims().items():
        matrix[axis.value, dim] = 1.0
        kinds[axis.value] = axis
    for feature, dim in asgn.visual_dims().items():
        matrix[K_SPATIAL + feature.value, dim] = 1.0
        kinds[K_SPATIAL + feature.value] = feature

    pca_loadings = []
    anon = asgn.anonymous_dims()
    empty = [i for i, kind in enumerate(kinds) if kind is None]
    if anon and empty:
        loadings, _ = pca_components(ds.values[list(anon)],
                                     min(len(empty), len(anon)))
        for rank, coefs in enumerate(loadings):
            row = empty[rank]
            matrix[row, list(anon)] = coefs
            kinds[row] = PcaComponent(rank)
            pca_loadings.append(tuple(zip(anon, (float(x) for x in coefs))))

    return FilterMatrix(matrix=matrix, row_kinds=tuple(kinds),
                        pca_loadings=tuple(pca_loadings))


def apply_filter(fm: FilterMatrix, ds: Dataset) -> np.ndarray:
    """Plain matrix product of the filtering matrix with the data."""
    if fm.matrix.shape[1] != ds.n_dims:
        raise ProjectionError(
            f"filter expects {fm.matrix.shape[1]} dimensions, dataset has "
            f"{ds.n_dims}")
    return fm.matrix @ ds.values


def standardize(filtered) -> ProjectedData:
    """Center and scale every output row to population std 1, shift spatial
    rows by +0.5, and pin zero-variance rows to their constant (0.5 spatial,
    0 visual)."""
    x = np.array(filtered, dtype=float)
    if x.ndim != 2 or x.shape[0] != K_SPATIAL + M_VISUAL:
        raise ProjectionError(
            f"expected a {K_SPATIAL + M_VISUAL}-row matrix, got {x.shape}")
    means = x.mean(axis=1)
    stds = x.std(axis=1)
    degenerate = stds < DEGENERATE_STD
    safe = np.where(degenerate, 1.0, stds)
    z = (x - means[:, None]) / safe[:, None]
    z[degenerate] = 0.0
    z[:K_SPATIAL] += 0.5
    return ProjectedData(
        spatial=z[:K_SPATIAL],
        visual=z[K_SPATIAL:],
        row_stats=tuple((float(m), float(s)) for m, s in zip(means, stds)),
        degenerate_rows=frozenset(int(i) for i in np.nonzero(degenerate)[0]),
    )


def project(ds: Dataset, asgn: DimensionAssignment):
    """Full projection: build the filter, apply it, standardize."""
    fm = build_filter_matrix(ds, asgn)
    return fm, standardize(apply_filter(fm, ds))


REPORT_SCOPES = ("anonymous", "anonymous+spatial")


def pca_report(ds: Dataset, asgn: DimensionAssignment,
               scope: str = "anonymous") -> PcaReport:
    """Loadings report for interpreting PCA-derived axes.

    Dimensions in scope are z-scored before decomposition so the report is
    scale-free; constant dimensions carry no variance and are left out.
    """
    if scope not in REPORT_SCOPES:
        raise ProjectionError(f"unknown scope {scope!r}; expected one of "
                              f"{REPORT_SCOPES}")
    violations = validate(asgn, ds.n_dims)
    if violations:
        raise ProjectionError("invalid assignment: "
                              + "; ".join(v.message for v in violations))
    dims = set(asgn.anonymous_dims())
    if scope == "anonymous+spatial":
        dims |= set(asgn.spatial_dims().values())
    dims = sorted(dims)
    if not dims:
        raise ProjectionError(f"no dimensions in scope {scope!r}")

    block = ds.values[dims]
    centered = block - block.mean(axis=1, keepdims=True)
    stds = centered.std(axis=1)
    keep = stds >= DEGENERATE_STD
    if not np.any(keep):
        raise ProjectionError("all dimensions in scope are constant")
    dims = [d for d, k in zip(dims, keep) if k]
    z = centered[keep] / stds[keep, None]
    loadings, svals = pca_components(z, len(dims))
    total = float(np.sum(z * z))
    return PcaReport(
        dimension_names=tuple(ds.names[d] for d in dims),
        loadings=loadings,
        explained_variance=tuple(float(s * s / total) for s in svals),
        scope=scope,
    )
