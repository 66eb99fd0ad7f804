"""Structural point classes that force or exclude freezing-set membership.

Degree-1 points and justified 1-coordinate local extrema belong to every
freezing set; articulation points can be dropped from any freezing set.
:func:`analyze` gathers these into the cardinality bounds for a minimal
freezing set inside the boundary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from freezeset.errors import ImageError
from freezeset.lattice import (
    DigitalImage,
    Point,
    articulation_points,
    boundary,
    components_without,
    require_connected,
)
from freezeset.selfmaps import SelfMap


@dataclass(frozen=True)
class ExtremumRecord:
    """A 1-coordinate local extremum.

    ``index`` is 1-based. The justifying neighbor is ``point`` moved one step
    along ``index`` toward its neighbors; ``justified`` records whether that
    lattice point lies in the image.
    """

    point: Point
    index: int
    direction: str  # "maximum" | "minimum"
    justifying_neighbor: Point
    justified: bool


class SegmentType(str, enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    SLANTED = "slanted"
    NOT_A_SEGMENT = "not-a-segment"


@dataclass(frozen=True)
class AnalysisReport:
    dim: int
    u: int
    d1: tuple[Point, ...]
    w: tuple[Point, ...]
    extrema: tuple[ExtremumRecord, ...]
    t: tuple[Point, ...]
    bd: tuple[Point, ...]
    lower_bound: int
    upper_bound: int | None
    upper_bound_reason: str | None = field(default=None)
    safe_upper_bound: int | None = field(default=None)


def degree_one_points(X: DigitalImage) -> tuple[Point, ...]:
    require_connected(X)
    return tuple(p for i, p in enumerate(X.points) if len(X.neighbor_indices(i)) == 1)


def local_extrema(X: DigitalImage) -> tuple[ExtremumRecord, ...]:
    """All (point, index, direction) witnesses, in canonical point order.

    Isolated points have no neighbors and yield no records.
    """
    out = []
    for i, p in enumerate(X.points):
        nbrs = [X.points[j] for j in X.neighbor_indices(i)]
        if not nbrs:
            continue
        for k in range(X.dim):
            if all(y[k] < p[k] for y in nbrs):
                direction, step = "maximum", -1
            elif all(y[k] > p[k] for y in nbrs):
                direction, step = "minimum", 1
            else:
                continue
            just = p[:k] + (p[k] + step,) + p[k + 1:]
            out.append(ExtremumRecord(p, k + 1, direction, just, just in X))
    return tuple(out)


def justified_extrema(X: DigitalImage) -> tuple[Point, ...]:
    return tuple(sorted({r.point for r in local_extrema(X) if r.justified}))


def segment_type(points: Sequence[Sequence[int]], u: int = 2) -> SegmentType:
    """Classify a list of consecutive collinear points in Z^2."""
    pts = [tuple(p) for p in points]
    if any(len(p) != 2 for p in pts):
        raise ImageError("segments are defined in Z^2 only")
    if u not in (1, 2):
        raise ImageError(f"adjacency parameter u={u} outside 1..2")
    if len(pts) < 2:
        raise ImageError("a segment needs at least 2 points")
    steps = {(b[0] - a[0], b[1] - a[1]) for a, b in zip(pts, pts[1:])}
    if len(steps) != 1:
        return SegmentType.NOT_A_SEGMENT
    dx, dy = steps.pop()
    if (abs(dx), abs(dy)) == (1, 0):
        return SegmentType.HORIZONTAL
    if (abs(dx), abs(dy)) == (0, 1):
        return SegmentType.VERTICAL
    if (abs(dx), abs(dy)) == (1, 1):
        return SegmentType.SLANTED
    return SegmentType.NOT_A_SEGMENT


def analyze(X: DigitalImage) -> AnalysisReport:
    require_connected(X)
    d1 = degree_one_points(X)
    w = articulation_points(X)
    extrema = local_extrema(X)
    t = tuple(sorted({r.point for r in extrema if r.justified}))
    bd = boundary(X)
    lower = len(set(d1) | set(t))
    upper, reason = None, None
    if X.dim == 1:
        reason = "n = 1: articulation points need not lie in Bd(X)"
    elif not w:
        reason = "no articulation points"
    elif len(w) == len(X):
        reason = "every point is an articulation point"
    else:
        upper = len(bd) - len(w)
    # Articulation points can be interior (e.g. under c_1), so #Bd - #W may
    # undercount; Bd minus W is itself a freezing set whenever it is nonempty.
    rest = set(bd) - set(w)
    safe = len(rest) if rest and 0 < len(w) < len(X) else len(bd)
    return AnalysisReport(X.dim, X.u, d1, w, extrema, t, bd, lower, upper, reason, safe)


def degree_one_witness(X: DigitalImage, x0: Sequence[int]) -> SelfMap:
    """Identity except x0 goes to its only neighbor; continuous, fixes X minus x0."""
    i = X.index(x0)
    nbrs = X.neighbor_indices(i)
    if len(nbrs) != 1:
        raise ImageError(f"{tuple(x0)} has degree {len(nbrs)}, not 1")
    return SelfMap.with_changes(X, {X.points[i]: X.points[nbrs[0]]})


def extremum_witness(X: DigitalImage, record: ExtremumRecord) -> SelfMap:
    """Identity except the extremum goes to its justifying neighbor."""
    if not record.justified:
        raise ImageError(f"{record.point} has no justifying neighbor in the image")
    return SelfMap.with_changes(X, {record.point: record.justifying_neighbor})


def articulation_retraction(X: DigitalImage, x0: Sequence[int], member: Sequence[int]) -> SelfMap:
    """Collapse the component of X minus x0 that contains ``member`` onto x0.

    The result is a retraction of X onto the rest of the image; any freezing
    set must therefore meet every component of X minus an articulation point.
    """
    i, m = X.index(x0), X.index(member)
    if i == m:
        raise ImageError("member must differ from the articulation point")
    labels = components_without(X, i)
    targets = tuple(i if labels[j] == labels[m] else j for j in range(len(X)))
    return SelfMap(X, targets)
