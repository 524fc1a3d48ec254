"""Tabular dataset ingestion, summaries, and synthetic test-data generators.

The pipeline convention is dimensions-as-rows: a dataset with n dimensions
and N points is an (n, N) matrix whose columns are points. CSV files are
the transpose of that (file columns become matrix rows).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DatasetError(ValueError):
    """Raised when a dataset cannot be constructed or ingested."""


@dataclass(frozen=True)
class Dataset:
    """An (n, N) numeric matrix with named dimensions and optional point labels."""

    names: tuple
    values: np.ndarray
    labels: tuple | None = None
    source: str = ""

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise DatasetError("values must be a 2-d matrix (dimensions x points)")
        n, n_points = values.shape
        if n < 1 or n_points < 1:
            raise DatasetError("dataset needs at least one dimension and one point")
        names = tuple(self.names)
        if len(names) != n:
            raise DatasetError(f"got {len(names)} names for {n} dimensions")
        if any(not isinstance(name, str) or not name for name in names):
            raise DatasetError("dimension names must be non-empty strings")
        if len(set(names)) != n:
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise DatasetError(f"duplicate dimension names: {dupes}")
        if not np.all(np.isfinite(values)):
            raise DatasetError("dataset values must all be finite")
        values.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n_points:
                raise DatasetError(f"got {len(labels)} labels for {n_points} points")
            object.__setattr__(self, "labels", labels)

    @property
    def n_dims(self) -> int:
        return self.values.shape[0]

    @property
    def n_points(self) -> int:
        return self.values.shape[1]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DatasetError(f"unknown dimension {name!r}") from None


@dataclass(frozen=True)
class DimensionSummary:
    name: str
    minimum: float
    maximum: float
    mean: float
    std: float
    distinct: int


MISSING_POLICIES = ("drop-point", "strict")


def _parse_cell(text: str) -> float | None:
    """A cell parses to a finite float or counts as missing."""
    text = text.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(path, delimiter: str = ",", label_column: str | None = None,
             missing_policy: str = "drop-point") -> Dataset:
    """Load a CSV file (header row mandatory) into a Dataset.

    File columns become matrix rows; file rows become points. The optional
    label column is split off into per-point labels. Points with missing or
    unparseable numeric cells are dropped under "drop-point" and abort the
    load under "strict".
    """
    if missing_policy not in MISSING_POLICIES:
        raise DatasetError(f"unknown missing policy {missing_policy!r}")
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DatasetError(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise DatasetError(f"{path}: duplicate header names {dupes}")

    label_idx = None
    if label_column is not None:
        if label_column not in header:
            raise DatasetError(f"{path}: label column {label_column!r} not in header")
        label_idx = header.index(label_column)
    numeric_cols = [i for i in range(len(header)) if i != label_idx]
    names = [header[i] for i in numeric_cols]

    points: list[list[float]] = []
    labels: list[str] = []
    for row_no, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != len(header):
            raise DatasetError(
                f"{path}: row {row_no} has {len(row)} cells, expected {len(header)}")
        values = [_parse_cell(row[i]) for i in numeric_cols]
        bad = [names[j] for j, v in enumerate(values) if v is None]
        if bad:
            if missing_policy == "strict":
                raise DatasetError(
                    f"{path}: row {row_no}: missing or non-numeric value in "
                    f"column(s) {bad}")
            continue  # drop-point
        points.append(values)  # type: ignore[arg-type]
        if label_idx is not None:
            labels.append(row[label_idx])

    if not points:
        raise DatasetError(f"{path}: no usable data rows")
    values = np.array(points, dtype=float).T
    return Dataset(names=tuple(names), values=values,
                   labels=tuple(labels) if label_idx is not None else None,
                   source=str(path))


def write_csv(ds: Dataset, path_or_file, delimiter: str = ",",
              label_header: str = "label") -> None:
    """Write a Dataset back to CSV (points as rows). Floats keep full precision
    so that load_csv(write_csv(ds)) reproduces ds bit-exactly."""
    if ds.labels is not None and label_header in ds.names:
        raise DatasetError(f"label header {label_header!r} collides with a dimension")

    def _dump(fh):
        writer = csv.writer(fh, delimiter=delimiter)
        header = list(ds.names) + ([label_header] if ds.labels is not None else [])
        writer.writerow(header)
        for j in range(ds.n_points):
            row = [repr(float(v)) for v in ds.values[:, j]]
            if ds.labels is not None:
                row.append(ds.labels[j])
            writer.writerow(row)

    if hasattr(path_or_file, "write"):
        _dump(path_or_file)
    else:
        with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
            _dump(fh)


def summarize(ds: Dataset) -> list[DimensionSummary]:
    """One summary per dimension, statistics over all points (population std)."""
    out = []
    for i, name in enumerate(ds.names):
        row = ds.values[i]
        out.append(DimensionSummary(
            name=name,
            minimum=float(row.min()),
            maximum=float(row.max()),
            mean=float(row.mean()),
            std=float(row.std()),
            distinct=int(np.unique(row).size),
        ))
    return out


# Synthetic archetypes: per-group feature means, shared per-feature sigmas.
# Values live on an arbitrary 0-10ish scale; downstream standardization
# makes the absolute scale irrelevant.

_POLITICIAN_FEATURES = (
    "promises", "fulfillment", "popularity", "sympathy", "economic_views",
    "social_views", "media_activity", "voting_effectiveness", "age",
)
_POLITICIAN_GROUPS = {
    "populist":     (9.0, 2.0, 7.0, 6.0, 3.0, 4.0, 9.0, 3.0, 50.0),
    "conservative": (4.0, 6.0, 5.0, 4.0, 7.0, 2.0, 4.0, 7.0, 62.0),
    "liberal":      (6.0, 5.0, 6.0, 7.0, 6.0, 8.0, 6.0, 5.0, 45.0),
    "technocrat":   (3.0, 8.0, 4.0, 3.0, 8.0, 6.0, 3.0, 8.0, 48.0),
}
_POLITICIAN_SIGMA = (1.2, 1.0, 1.1, 1.0, 0.9, 1.0, 1.3, 1.0, 6.0)
_FIRST_NAMES = ("Adam", "Beata", "Cyril", "Dana", "Emil", "Greta",
                "Hugo", "Irena", "Jonas", "Karin", "Lech", "Mira")
_LAST_NAMES = ("Falk", "Gorski", "Hensel", "Ibsen", "Jarvi", "Kral",
               "Lindt", "Marek", "Novak", "Orlov", "Pavic", "Ristic")

_DRINK_FEATURES = (
    "sweetness", "fizziness", "overall_rating", "color_intensity", "price",
    "caffeine", "sourness", "sugar", "citric_acid", "co2_pressure",
    "preservatives",
)
_DRINK_GROUPS = {
    "classic": (7.0, 6.0, 6.0, 5.0, 3.0, 4.0, 3.0, 8.0, 3.0, 5.0, 4.0),
    "premium": (5.0, 4.0, 8.0, 3.0, 8.0, 3.0, 4.0, 4.0, 4.0, 4.0, 1.0),
    "extreme": (8.0, 9.0, 5.0, 8.0, 5.0, 9.0, 6.0, 9.0, 6.0, 9.0, 7.0),
}
_DRINK_SIGMA = (0.9, 1.0, 0.8, 1.1, 1.0, 1.2, 0.9, 1.0, 0.8, 1.0, 0.9)
_DRINK_WORDS = ("Sparkle", "Vigor", "Norda", "Citro", "Velvet", "Blast",
                "Aura", "Polar", "Tango", "Ember", "Brisa", "Zest")

ARCHETYPES = ("politicians", "drinks")


def generate_synthetic(archetype: str, n_points: int, seed: int = 0) -> Dataset:
    """Deterministic group-structured dataset with a trailing group_numeric
    dimension and per-point labels."""
    if archetype == "politicians":
        features, groups, sigma = (_POLITICIAN_FEATURES, _POLITICIAN_GROUPS,
                                   _POLITICIAN_SIGMA)
    elif archetype == "drinks":
        features, groups, sigma = _DRINK_FEATURES, _DRINK_GROUPS, _DRINK_SIGMA
    else:
        raise DatasetError(f"unknown archetype {archetype!r}; "
                           f"expected one of {ARCHETYPES}")
    group_names = list(groups)
    if n_points < len(group_names):
        raise DatasetError(
            f"need at least {len(group_names)} points for {archetype!r}")

    rng = np.random.default_rng(seed)
    group_of = np.arange(n_points) % len(group_names)
    means = np.array([groups[group_names[g]] for g in group_of]).T
    noise = rng.standard_normal((len(features), n_points))
    values = means + np.asarray(sigma)[:, None] * noise
    values = np.vstack([values, group_of.astype(float)])

    if archetype == "politicians":
        labels = tuple(
            f"{_FIRST_NAMES[i % 12]} {_LAST_NAMES[(i // 12 + i) % 12]}"
            + (f" {i // 144 + 1}" if i >= 144 else "")
            for i in range(n_points))
    else:
        labels = tuple(
            f"{_DRINK_WORDS[i % 12]} {group_names[group_of[i]].capitalize()}"
            + (f" #{i // 12 + 1}" if i >= 12 else "")
            for i in range(n_points))

    return Dataset(names=features + ("group_numeric",), values=values,
                   labels=labels, source=f"synthetic:{archetype}:{seed}")
