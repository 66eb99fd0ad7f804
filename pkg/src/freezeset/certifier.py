"""Freezing certificates by fixed-point propagation.

Starting from a seed set assumed fixed by some continuous f, five rules add
points that f must also fix:

``unique-shortest-path``
    two fixed points joined by a unique shortest path fix the whole path;
``c1-axis-segment``
    (n = 2, u = 1) a horizontal or vertical segment of X with fixed ends;
``c2-slanted-segment``
    (n = 2, u = 2) a slope +-1 segment of X with fixed ends;
``articulation``
    an articulation point with fixed points in two components of its
    complement;
``boundary-freezes``
    once all of Bd(X) is fixed, so is X (the boundary is a freezing set).

If the closure is all of X the seed is a freezing set. The rules are sound,
not complete: an inconclusive result says nothing about the seed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from freezeset.errors import ImageError
from freezeset.formats import format_points, parse_point_set
from freezeset.lattice import (
    DigitalImage,
    Point,
    articulation_indices,
    bfs_from,
    boundary,
    components_without,
    require_connected,
)

UNIQUE_PATH = "unique-shortest-path"
AXIS_SEGMENT = "c1-axis-segment"
SLANTED_SEGMENT = "c2-slanted-segment"
ARTICULATION = "articulation"
BOUNDARY = "boundary-freezes"
RULES = (UNIQUE_PATH, AXIS_SEGMENT, SLANTED_SEGMENT, ARTICULATION, BOUNDARY)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    premises: tuple[Point, ...]
    forced: tuple[Point, ...]


@dataclass(frozen=True)
class PropagationTrace:
    steps: tuple[TraceStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def rules_used(self) -> set[str]:
        return {s.rule for s in self.steps}


@dataclass(frozen=True)
class Certificate:
    outcome: str  # "certified" | "inconclusive"
    seed: tuple[Point, ...]
    closure: tuple[Point, ...]
    trace: PropagationTrace

    @property
    def certified(self) -> bool:
        return self.outcome == "certified"


def _segment_interior(X: DigitalImage, a: Point, b: Point) -> tuple[str, list[Point]] | None:
    """Interior lattice points of the segment from a to b, if it is a segment of X
    that one of the two segment rules applies to."""
    if X.dim != 2:
        return None
    dx, dy = b[0] - a[0], b[1] - a[1]
    steps = max(abs(dx), abs(dy))
    if X.u == 1 and (dx == 0) != (dy == 0):
        rule = AXIS_SEGMENT
    elif X.u == 2 and abs(dx) == abs(dy) != 0:
        rule = SLANTED_SEGMENT
    else:
        return None
    sx, sy = (dx > 0) - (dx < 0), (dy > 0) - (dy < 0)
    interior = [(a[0] + k * sx, a[1] + k * sy) for k in range(1, steps)]
    if all(p in X for p in interior):
        return rule, interior
    return None


def _unique_path(X: DigitalImage, ia: int, ib: int) -> list[int] | None:
    dist, count, parent = bfs_from(X, ia)
    if dist[ib] < 0 or count[ib] != 1:
        return None
    chain = [ib]
    while chain[-1] != ia:
        chain.append(parent[chain[-1]])
    return chain


def propagate_fixed(
    X: DigitalImage, seed: Iterable[Sequence[int]], rule_order: Sequence[str] | None = None
) -> tuple[tuple[Point, ...], PropagationTrace]:
    """Close ``seed`` under the forcing rules.

    Returns the closure (canonical order) and the steps that produced it.
    ``rule_order`` only changes which rule gets credit for a point, never
    the closure.
    """
    require_connected(X)
    order = tuple(rule_order) if rule_order is not None else (SLANTED_SEGMENT, AXIS_SEGMENT, UNIQUE_PATH)
    pts = X.points
    F = set(X.indices(seed))
    steps: list[TraceStep] = []
    queue = deque(sorted(F))
    processed: list[int] = []
    arts = articulation_indices(X)
    bd = X.indices(boundary(X))

    def add(rule: str, premises: Iterable[int], forced: Iterable[int]) -> None:
        new = sorted(set(forced) - F)
        if not new:
            return
        F.update(new)
        queue.extend(new)
        steps.append(TraceStep(rule, tuple(pts[i] for i in premises), tuple(pts[i] for i in new)))

    while True:
        while queue:
            x = queue.popleft()
            for y in processed:
                a, b = min(x, y), max(x, y)
                for rule in order:
                    if rule == UNIQUE_PATH:
                        path = _unique_path(X, a, b)
                        if path is not None:
                            add(UNIQUE_PATH, (a, b), path)
                    else:
                        seg = _segment_interior(X, pts[a], pts[b])
                        if seg is not None and seg[0] == rule:
                            add(rule, (a, b), X.indices(seg[1]))
            processed.append(x)
        for x0 in arts:
            if x0 in F:
                continue
            labels = components_without(X, x0)
            reps: dict[int, int] = {}
            for v in sorted(F):
                reps.setdefault(labels[v], v)
            if len(reps) >= 2:
                first, second = sorted(reps.values())[:2]
                add(ARTICULATION, (first, second), (x0,))
        if not queue and len(F) < len(X) and F.issuperset(bd):
            add(BOUNDARY, bd, range(len(X)))
        if not queue:
            break
    return tuple(pts[i] for i in sorted(F)), PropagationTrace(tuple(steps))


def certify_freezing(X: DigitalImage, A: Iterable[Sequence[int]], **kwargs) -> Certificate:
    seed = tuple(sorted({tuple(p) for p in A}))
    closure, trace = propagate_fixed(X, seed, **kwargs)
    outcome = "certified" if len(closure) == len(X) else "inconclusive"
    return Certificate(outcome, seed, closure, trace)


def _plain_distances(X: DigitalImage, src: Point) -> dict[Point, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for j in X.neighbor_indices(X.index(v)):
            w = X.points[j]
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _geodesic_layers(X: DigitalImage, a: Point, b: Point) -> list[list[Point]] | None:
    """Points on shortest a-b paths grouped by distance from a.

    The shortest path is unique exactly when every layer has one point.
    """
    da = _plain_distances(X, a)
    if b not in da:
        return None
    db = _plain_distances(X, b)
    d = da[b]
    layers: list[list[Point]] = [[] for _ in range(d + 1)]
    for p, k in da.items():
        if db.get(p, -1) == d - k:
            layers[k].append(p)
    return layers


def _separated(X: DigitalImage, x0: Point, x1: Point, x2: Point) -> bool:
    """True iff every path from x1 to x2 passes through x0."""
    seen = {x1}
    stack = [x1]
    while stack:
        v = stack.pop()
        for j in X.neighbor_indices(X.index(v)):
            w = X.points[j]
            if w != x0 and w not in seen:
                seen.add(w)
                stack.append(w)
    return x2 not in seen


def _step_valid(X: DigitalImage, step: TraceStep, current: set[Point]) -> bool:
    forced = set(step.forced)
    if not forced or forced & current or not set(step.premises) <= current:
        return False
    if step.rule == BOUNDARY:
        edge = {
            p for p in X.points
            if any(p[:k] + (p[k] + s,) + p[k + 1:] not in X for k in range(X.dim) for s in (-1, 1))
        }
        return set(step.premises) == edge and forced <= set(X.points)
    if step.rule == ARTICULATION:
        if len(step.premises) != 2 or len(step.forced) != 1:
            return False
        x1, x2 = step.premises
        (x0,) = step.forced
        return x0 not in (x1, x2) and _separated(X, x0, x1, x2)
    if len(step.premises) != 2:
        return False
    a, b = step.premises
    if step.rule == UNIQUE_PATH:
        layers = _geodesic_layers(X, a, b)
        return layers is not None and all(len(layer) == 1 for layer in layers) \
            and forced <= {layer[0] for layer in layers}
    if step.rule in (AXIS_SEGMENT, SLANTED_SEGMENT):
        if X.dim != 2:
            return False
        if step.rule == AXIS_SEGMENT and X.u != 1 or step.rule == SLANTED_SEGMENT and X.u != 2:
            return False
        dx, dy = b[0] - a[0], b[1] - a[1]
        if step.rule == AXIS_SEGMENT and not (dx == 0) != (dy == 0):
            return False
        if step.rule == SLANTED_SEGMENT and not abs(dx) == abs(dy) != 0:
            return False
        n = max(abs(dx), abs(dy))
        sx, sy = (dx > 0) - (dx < 0), (dy > 0) - (dy < 0)
        interior = {(a[0] + k * sx, a[1] + k * sy) for k in range(1, n)}
        return all(p in X for p in interior) and forced <= interior
    return False


def recheck_trace(
    X: DigitalImage,
    seed: Iterable[Sequence[int]],
    trace: PropagationTrace,
    closure: Iterable[Sequence[int]] | None = None,
) -> bool:
    """Replay a trace, re-deriving every premise from scratch.

    Shortest-path uniqueness is re-established from plain distance layers,
    not from the path counts used during propagation. If ``closure`` is
    given, the replayed set must equal it.
    """
    try:
        current = {tuple(p) for p in seed}
        if any(p not in X for p in current):
            return False
        for step in trace.steps:
            if step.rule not in RULES or any(p not in X for p in step.premises + step.forced):
                return False
            if not _step_valid(X, step, current):
                return False
            current |= set(step.forced)
    except ImageError:
        return False
    return closure is None or current == {tuple(p) for p in closure}


def dump_certificate(cert: Certificate) -> str:
    """Line-oriented text form: one trace step per line."""
    lines = [
        f"outcome: {cert.outcome}",
        f"seed: {format_points(cert.seed, ';')}",
    ]
    for s in cert.trace.steps:
        lines.append(f"step: {s.rule} | {format_points(s.premises, ';')} | {format_points(s.forced, ';')}")
    lines.append(f"closure: {format_points(cert.closure, ';')}")
    return "\n".join(lines) + "\n"


def load_certificate(text: str) -> Certificate:
    outcome, seed, closure = None, None, None
    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        value = value.strip()
        if key == "outcome":
            outcome = value
        elif key == "seed":
            seed = parse_point_set(value)
        elif key == "closure":
            closure = parse_point_set(value)
        elif key == "step":
            parts = [p.strip() for p in value.split("|")]
            if len(parts) != 3:
                raise ImageError(f"malformed step line: {raw!r}")
            steps.append(TraceStep(parts[0], parse_point_set(parts[1]), parse_point_set(parts[2])))
        else:
            raise ImageError(f"unknown certificate line: {raw!r}")
    if outcome is None or seed is None or closure is None:
        raise ImageError("certificate needs outcome, seed and closure lines")
    return Certificate(outcome, seed, closure, PropagationTrace(tuple(steps)))
