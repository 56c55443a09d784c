"""Singular points of line arrangements in the projective plane."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .codes import ProjectivePoint, vanishing_count
from .errors import RankError
from .forms import Arrangement, FormCollection


@dataclass(frozen=True)
class SingularLocus:
    """Intersection points with the number of lines through each (always >= 2)."""

    points: tuple[tuple[ProjectivePoint, int], ...]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.points]

    def multiplicity(self, point: ProjectivePoint) -> int:
        for p, m in self.points:
            if p == point:
                return m
        return 0

    def __len__(self):
        return len(self.points)


def _cross(field, u, v):
    f = field
    return (
        f.add(f.mul(u[1], v[2]), f.neg(f.mul(u[2], v[1]))),
        f.add(f.mul(u[2], v[0]), f.neg(f.mul(u[0], v[2]))),
        f.add(f.mul(u[0], v[1]), f.neg(f.mul(u[1], v[0]))),
    )


def _check(arr: FormCollection):
    if arr.k != 3:
        raise RankError("line arrangements live in three variables")
    if not isinstance(arr, Arrangement):
        Arrangement.of(arr)


def singular_locus(arr: FormCollection) -> SingularLocus:
    """All pairwise intersection points, merged, with their multiplicities."""
    _check(arr)
    field = arr.field
    pts = set()
    for f, g in itertools.combinations(arr.forms, 2):
        pts.add(ProjectivePoint.of(field, _cross(field, f.coeffs, g.coeffs)))
    return SingularLocus(tuple((p, vanishing_count(arr, p)) for p in sorted(pts)))


def max_multiplicity(arr: FormCollection) -> int:
    """m: the largest number of concurrent lines."""
    locus = singular_locus(arr)
    if not locus.points:
        raise RankError("an arrangement needs at least two lines")
    return max(locus.multiplicities)


def lines_through(arr: FormCollection, point: ProjectivePoint) -> list[int]:
    return [i for i, f in enumerate(arr.forms) if f(point.coords) == 0]


def is_generic(arr: FormCollection) -> bool:
    """True when no three lines are concurrent."""
    return max_multiplicity(arr) == 2
