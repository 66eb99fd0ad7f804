"""Self-maps of a digital image and digital continuity."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from freezeset.errors import CapExceededError, ImageError, NotContinuousError
from freezeset.lattice import DigitalImage, Point, subset_is_connected

DEFINITION_CAP = 12


@dataclass(frozen=True)
class SelfMap:
    """A total function X -> X stored as target indices in canonical point order."""

    image: DigitalImage
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if len(self.targets) != n:
            raise ImageError(f"self-map has {len(self.targets)} targets for {n} points")
        if any(not 0 <= t < n for t in self.targets):
            raise ImageError("self-map target outside the image")

    @classmethod
    def identity(cls, X: DigitalImage) -> SelfMap:
        return cls(X, tuple(range(len(X))))

    @classmethod
    def from_mapping(cls, X: DigitalImage, mapping: Mapping[Sequence[int], Sequence[int]]) -> SelfMap:
        """Build from an explicit assignment covering every point of X."""
        targets = [-1] * len(X)
        for p, q in mapping.items():
            targets[X.index(p)] = X.index(q)
        missing = [X.points[i] for i, t in enumerate(targets) if t < 0]
        if missing:
            raise ImageError(f"self-map is not total; unassigned: {missing}")
        return cls(X, tuple(targets))

    @classmethod
    def with_changes(cls, X: DigitalImage, changes: Mapping[Sequence[int], Sequence[int]]) -> SelfMap:
        """Identity everywhere except at the given points."""
        targets = list(range(len(X)))
        for p, q in changes.items():
            targets[X.index(p)] = X.index(q)
        return cls(X, tuple(targets))

    def __call__(self, p: Sequence[int]) -> Point:
        return self.image.points[self.targets[self.image.index(p)]]

    def items(self) -> Iterator[tuple[Point, Point]]:
        pts = self.image.points
        return ((pts[i], pts[t]) for i, t in enumerate(self.targets))

    def as_dict(self) -> dict[Point, Point]:
        return dict(self.items())

    @property
    def is_identity(self) -> bool:
        return all(i == t for i, t in enumerate(self.targets))

    def moved(self) -> tuple[Point, ...]:
        return tuple(self.image.points[i] for i, t in enumerate(self.targets) if i != t)

    def compose(self, other: SelfMap) -> SelfMap:
        """self after other."""
        if other.image != self.image:
            raise ImageError("cannot compose self-maps of different images")
        return SelfMap(self.image, tuple(self.targets[t] for t in other.targets))


def _adjacent_or_equal(X: DigitalImage, i: int, j: int) -> bool:
    return i == j or j in X.neighbor_indices(i)


def is_continuous(X: DigitalImage, f: SelfMap) -> bool:
    """Adjacency criterion: x <-> x' implies f(x) = f(x') or f(x) <-> f(x')."""
    _check_map(X, f)
    t = f.targets
    for i in range(len(X)):
        for j in X.neighbor_indices(i):
            if j > i and not _adjacent_or_equal(X, t[i], t[j]):
                return False
    return True


def connected_subsets(X: DigitalImage) -> Iterator[tuple[int, ...]]:
    """Every nonempty connected subset exactly once, as sorted index tuples.

    Each subset is grown from its least index; a vertex joins the extension
    set only if it is not already in or next to the current subset, which
    rules out duplicates.
    """
    for root in range(len(X)):
        closed = {root, *X.neighbor_indices(root)}
        yield from _extend(X, root, [root], closed, {w for w in X.neighbor_indices(root) if w > root})


def _extend(X: DigitalImage, root: int, sub: list[int], near: set[int], ext: set[int]):
    yield tuple(sorted(sub))
    ext = set(ext)
    while ext:
        w = min(ext)
        ext.discard(w)
        nw = X.neighbor_indices(w)
        sub.append(w)
        yield from _extend(X, root, sub, near.union(nw), ext | {z for z in nw if z > root and z not in near})
        sub.pop()


def is_continuous_by_definition(X: DigitalImage, f: SelfMap, cap: int = DEFINITION_CAP) -> bool:
    """Definitional criterion: f maps every connected subset onto a connected set.

    Exponential in #X; meant as a cross-check of :func:`is_continuous`.
    """
    _check_map(X, f)
    if len(X) > cap:
        raise CapExceededError(f"{len(X)} points exceeds connected-subset cap {cap}")
    subsets = X.cached("connected_subsets", lambda: tuple(connected_subsets(X)))
    t = f.targets
    return all(subset_is_connected(X, {t[i] for i in s}) for s in subsets)


def fixed_points(f: SelfMap) -> tuple[Point, ...]:
    return tuple(f.image.points[i] for i, t in enumerate(f.targets) if i == t)


def check_pulling_consistency(X: DigitalImage, f: SelfMap) -> bool:
    """Check the pulling lemma and its monotone-path extension for a continuous f.

    For adjacent q, q' and a coordinate i: if f pulls q below p_i(q) and
    p_i(q) < p_i(q'), then f pulls q' below p_i(q'); likewise upward. The
    path form is checked along every strictly monotone path from each
    pulled point. Both must hold for every continuous map, so a False
    return means a bug, not a property of f.
    """
    if not is_continuous(X, f):
        raise NotContinuousError("pulling consistency is defined for continuous maps only")
    pts = X.points
    t = f.targets
    for i in range(X.dim):
        for sign in (1, -1):
            # sign=1: f(q)_i < q_i and the path increases in i; sign=-1 mirrored
            def pulled(v: int) -> bool:
                return sign * pts[t[v]][i] < sign * pts[v][i]

            for q in range(len(X)):
                if not pulled(q):
                    continue
                for w in X.neighbor_indices(q):
                    if sign * pts[w][i] > sign * pts[q][i] and not pulled(w):
                        return False
                seen = {q}
                queue = deque([q])
                while queue:
                    v = queue.popleft()
                    if not pulled(v):
                        return False
                    for w in X.neighbor_indices(v):
                        if w not in seen and sign * pts[w][i] > sign * pts[v][i]:
                            seen.add(w)
                            queue.append(w)
    return True


def all_self_maps(X: DigitalImage) -> Iterable[SelfMap]:
    """Every set map X -> X (#X ** #X of them), in lexicographic order of targets."""
    n = len(X)
    for targets in itertools.product(range(n), repeat=n):
        yield SelfMap(X, targets)


def _check_map(X: DigitalImage, f: SelfMap) -> None:
    if f.image != X:
        raise ImageError("self-map belongs to a different image")
