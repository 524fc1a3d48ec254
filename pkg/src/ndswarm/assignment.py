"""Semantic assignment of input dimensions to output feature categories.

Each input dimension is either mapped to one of the four spatial axes,
mapped to one of the ten avatar visual features, left anonymous (fed to
PCA), or skipped entirely. Axes and features accept at most one dimension
each.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class AssignmentError(ValueError):
    """Raised for malformed assignment declarations."""


class SpatialAxis(Enum):
    X = 0
    Y = 1
    Z = 2
    T = 3


class VisualFeature(Enum):
    Skin_C = 0
    Hair_C = 1
    Eye_S = 2
    Nose_L = 3
    Mouth_W = 4
    Smile = 5
    Frown = 6
    Hair_L = 7
    Face_Elong = 8
    Iris_C = 9


# Output geometry is fixed by the catalogs above; the math below is written
# against these symbols so a bigger feature catalog only changes the enums.
K_SPATIAL = len(SpatialAxis)
M_VISUAL = len(VisualFeature)


class Category(Enum):
    SPATIAL = "spatial"
    VISUAL = "visual"
    ANONYMOUS = "anonymous"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Role:
    """What one input dimension becomes: a category plus its target, if any."""

    category: Category
    target: SpatialAxis | VisualFeature | None = None

    def __post_init__(self):
        if self.category is Category.SPATIAL:
            if not isinstance(self.target, SpatialAxis):
                raise AssignmentError("spatial role needs a SpatialAxis target")
        elif self.category is Category.VISUAL:
            if not isinstance(self.target, VisualFeature):
                raise AssignmentError("visual role needs a VisualFeature target")
        elif self.target is not None:
            raise AssignmentError(f"{self.category.value} role takes no target")


def spatial(axis: SpatialAxis) -> Role:
    return Role(Category.SPATIAL, axis)


def visual(feature: VisualFeature) -> Role:
    return Role(Category.VISUAL, feature)


ANONYMOUS = Role(Category.ANONYMOUS)
SKIPPED = Role(Category.SKIPPED)


@dataclass(frozen=True)
class Violation:
    message: str
    dims: tuple


@dataclass(frozen=True)
class Counts:
    n_spatial: int
    n_visual: int
    n_anonymous: int
    n_skipped: int


@dataclass(frozen=True)
class DimensionAssignment:
    """Per-dimension roles, indexed 0..n-1 in dataset dimension order."""

    roles: tuple

    def __post_init__(self):
        roles = tuple(self.roles)
        if not all(isinstance(r, Role) for r in roles):
            raise AssignmentError("roles must be Role instances")
        object.__setattr__(self, "roles", roles)

    @property
    def n_dims(self) -> int:
        return len(self.roles)

    def spatial_dims(self) -> dict:
        """Axis -> dimension index, for every spatial role."""
        return {r.target: i for i, r in enumerate(self.roles)
                if r.category is Category.SPATIAL}

    def visual_dims(self) -> dict:
        """Feature -> dimension index, for every visual role."""
        return {r.target: i for i, r in enumerate(self.roles)
                if r.category is Category.VISUAL}

    def anonymous_dims(self) -> tuple:
        return tuple(i for i, r in enumerate(self.roles)
                     if r.category is Category.ANONYMOUS)

    @classmethod
    def from_spec(cls, spec: dict, names) -> "DimensionAssignment":
        """Build from the JSON file form: {dimension name: {"category": ...,
        "target": ...}}. Dimensions absent from the spec are skipped."""
        names = list(names)
        unknown = sorted(set(spec) - set(names))
        if unknown:
            raise AssignmentError(f"unknown dimension name(s): {unknown}")
        roles = [SKIPPED] * len(names)
        for name, entry in spec.items():
            if not isinstance(entry, dict) or "category" not in entry:
                raise AssignmentError(f"{name}: entry must be an object with a "
                                      f"'category' key")
            try:
                category = Category(entry["category"])
            except ValueError:
                raise AssignmentError(
                    f"{name}: unknown category {entry['category']!r}") from None
            target_name = entry.get("target")
            if category is Category.SPATIAL:
                try:
                    role = spatial(SpatialAxis[target_name])
                except KeyError:
                    raise AssignmentError(
                        f"{name}: unknown spatial axis {target_name!r}") from None
            elif category is Category.VISUAL:
                try:
                    role = visual(VisualFeature[target_name])
                except KeyError:
                    raise AssignmentError(
                        f"{name}: unknown visual feature {target_name!r}") from None
            else:
                if target_name is not None:
                    raise AssignmentError(
                        f"{name}: {category.value} takes no target")
                role = ANONYMOUS if category is Category.ANONYMOUS else SKIPPED
            roles[names.index(name)] = role
        return cls(tuple(roles))

    def to_spec(self, names) -> dict:
        names = list(names)
        if len(names) != self.n_dims:
            raise AssignmentError(f"got {len(names)} names for {self.n_dims} roles")
        out = {}
        for name, role in zip(names, self.roles):
            entry = {"category": role.category.value}
            if role.target is not None:
                entry["target"] = role.target.name
            out[name] = entry
        return out


def validate(asgn: DimensionAssignment, n_dims: int) -> list:
    """Check the assignment invariants. Empty list means valid; otherwise
    every violation is reported with the offending dimension indices."""
    violations = []
    if asgn.n_dims != n_dims:
        violations.append(Violation(
            f"assignment covers {asgn.n_dims} dimensions, dataset has {n_dims}",
            dims=()))
    for catalog, label in ((SpatialAxis, "axis"), (VisualFeature, "feature")):
        used: dict = {}
        for i, role in enumerate(asgn.roles):
            if isinstance(role.target, catalog):
                used.setdefault(role.target, []).append(i)
        for target, dims in used.items():
            if len(dims) > 1:
                violations.append(Violation(
                    f"{label} {target.name} assigned to {len(dims)} dimensions",
                    dims=tuple(dims)))
    return violations


def counts(asgn: DimensionAssignment) -> Counts:
    by_cat = {cat: 0 for cat in Category}
    for role in asgn.roles:
        by_cat[role.category] += 1
    return Counts(n_spatial=by_cat[Category.SPATIAL],
                  n_visual=by_cat[Category.VISUAL],
                  n_anonymous=by_cat[Category.ANONYMOUS],
                  n_skipped=by_cat[Category.SKIPPED])
