"""Digital images as finite lattice point sets under c_u adjacency.

Points are plain tuples of ints. Every point set returned by this module is a
tuple sorted lexicographically, so reports built from it are deterministic.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from freezeset.errors import DisconnectedImageError, ImageError

Point = tuple[int, ...]


def as_point(p: Sequence[int]) -> Point:
    try:
        q = tuple(int(c) for c in p)
    except (TypeError, ValueError) as exc:
        raise ImageError(f"not a lattice point: {p!r}") from exc
    if not q:
        raise ImageError("points need at least one coordinate")
    return q


def sorted_points(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """Canonical (lexicographic, duplicate-free) ordering of a point collection."""
    return tuple(sorted({as_point(p) for p in points}))


def adjacent(p: Sequence[int], q: Sequence[int], u: int) -> bool:
    """True iff p and q are c_u-adjacent.

    They must be distinct, differ in at most ``u`` coordinates, and every
    differing coordinate must differ by exactly 1.
    """
    if len(p) != len(q):
        raise ImageError(f"dimension mismatch: {tuple(p)} vs {tuple(q)}")
    if not 1 <= u <= len(p):
        raise ImageError(f"adjacency parameter u={u} outside 1..{len(p)}")
    differing = 0
    for a, b in zip(p, q):
        d = abs(a - b)
        if d > 1:
            return False
        differing += d
    return 0 < differing <= u


def _offsets(n: int, u: int) -> tuple[Point, ...]:
    return tuple(
        v for v in itertools.product((-1, 0, 1), repeat=n)
        if 0 < sum(map(abs, v)) <= u
    )


class DigitalImage:
    """A finite nonempty set X in Z^n together with the c_u adjacency.

    Instances are immutable. Points are stored in canonical order and are
    addressed internally by their index in that order.
    """

    __slots__ = ("points", "dim", "u", "name", "_index", "_nbrs", "_cache")

    def __init__(
        self,
        points: Iterable[Sequence[int]],
        adjacency: int,
        dim: int | None = None,
        name: str | None = None,
        *,
        allow_duplicates: bool = True,
    ) -> None:
        raw = [as_point(p) for p in points]
        if not raw:
            raise ImageError("a digital image needs at least one point")
        pts = tuple(sorted(set(raw)))
        if not allow_duplicates and len(pts) != len(raw):
            raise ImageError("duplicate points in image")
        n = len(pts[0]) if dim is None else int(dim)
        if n < 1:
            raise ImageError(f"dimension must be positive, got {n}")
        for p in pts:
            if len(p) != n:
                raise ImageError(f"point {p} does not have dimension {n}")
        u = int(adjacency)
        if not 1 <= u <= n:
            raise ImageError(f"adjacency parameter u={u} outside 1..{n}")
        self.points: tuple[Point, ...] = pts
        self.dim = n
        self.u = u
        self.name = name
        self._index = {p: i for i, p in enumerate(pts)}
        offs = _offsets(n, u)
        nbrs = []
        for p in pts:
            found = []
            for d in offs:
                j = self._index.get(tuple(a + b for a, b in zip(p, d)))
                if j is not None:
                    found.append(j)
            nbrs.append(tuple(sorted(found)))
        self._nbrs: tuple[tuple[int, ...], ...] = tuple(nbrs)
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        try:
            return tuple(p) in self._index  # type: ignore[arg-type]
        except TypeError:
            return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DigitalImage):
            return NotImplemented
        return (self.points, self.dim, self.u) == (other.points, other.dim, other.u)

    def __hash__(self) -> int:
        return hash((self.points, self.dim, self.u))

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"DigitalImage({label}n={self.dim}, u={self.u}, {len(self)} points)"

    def __getstate__(self):
        return (self.points, self.dim, self.u, self.name)

    def __setstate__(self, state) -> None:
        points, dim, u, name = state
        self.__init__(points, u, dim, name)

    def index(self, p: Sequence[int]) -> int:
        try:
            return self._index[tuple(p)]
        except (KeyError, TypeError):
            raise ImageError(f"point {p} is not in the image") from None

    def indices(self, ps: Iterable[Sequence[int]]) -> list[int]:
        return sorted({self.index(p) for p in ps})

    def neighbor_indices(self, i: int) -> tuple[int, ...]:
        return self._nbrs[i]

    def degree(self, p: Sequence[int]) -> int:
        return len(self._nbrs[self.index(p)])

    def subimage(self, points: Iterable[Sequence[int]]) -> DigitalImage:
        pts = list(points)
        for p in pts:
            self.index(p)
        return DigitalImage(pts, self.u, self.dim)

    def cached(self, key, build):
        """Memoize a derived structure on this (immutable) image."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value


def neighborhood(X: DigitalImage, x: Sequence[int]) -> tuple[Point, ...]:
    """N(X, x): the points of X adjacent to x."""
    return tuple(X.points[j] for j in X.neighbor_indices(X.index(x)))


def _component_labels(X: DigitalImage, removed: frozenset[int] = frozenset()) -> list[int]:
    labels = [-1] * len(X)
    comp = 0
    for s in range(len(X)):
        if labels[s] != -1 or s in removed:
            continue
        labels[s] = comp
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in X.neighbor_indices(v):
                if labels[w] == -1 and w not in removed:
                    labels[w] = comp
                    queue.append(w)
        comp += 1
    return labels


def components(X: DigitalImage) -> list[tuple[Point, ...]]:
    """Partition of X into c_u-components, ordered by least member."""
    labels = _component_labels(X)
    out: dict[int, list[Point]] = {}
    for p, c in zip(X.points, labels):
        out.setdefault(c, []).append(p)
    return [tuple(out[c]) for c in sorted(out)]


def is_connected(X: DigitalImage) -> bool:
    return max(_component_labels(X)) == 0


def require_connected(X: DigitalImage) -> None:
    if not is_connected(X):
        raise DisconnectedImageError(f"{X!r} is not connected")


def subset_is_connected(X: DigitalImage, idx: Iterable[int]) -> bool:
    """Connectedness of the subgraph induced by a set of point indices."""
    members = set(idx)
    if not members:
        return True
    start = next(iter(members))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in X.neighbor_indices(v):
            if w in members and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(members)


@dataclass(frozen=True)
class PathInfo:
    """Shortest-path data between two points.

    ``shortest_path_count`` is capped at 2: only uniqueness matters, so 2
    means "two or more".
    """

    distance: int
    shortest_path_count: int
    unique_path: tuple[Point, ...] | None

    @property
    def is_unique(self) -> bool:
        return self.shortest_path_count == 1


def _bfs_counts(X: DigitalImage, src: int) -> tuple[list[int], list[int], list[int]]:
    n = len(X)
    dist = [-1] * n
    count = [0] * n
    parent = [-1] * n
    dist[src] = 0
    count[src] = 1
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in X.neighbor_indices(v):
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                count[w] = count[v]
                parent[w] = v
                queue.append(w)
            elif dist[w] == dist[v] + 1:
                count[w] = min(2, count[w] + count[v])
    return dist, count, parent


def bfs_from(X: DigitalImage, src: int) -> tuple[list[int], list[int], list[int]]:
    """Cached (distances, capped path counts, BFS parents) from one point index."""
    return X.cached(("bfs", src), lambda: _bfs_counts(X, src))


def shortest_path_info(X: DigitalImage, a: Sequence[int], b: Sequence[int]) -> PathInfo:
    ia, ib = X.index(a), X.index(b)
    dist, count, parent = bfs_from(X, ia)
    if dist[ib] < 0:
        raise DisconnectedImageError(f"{tuple(a)} and {tuple(b)} lie in different components")
    path = None
    if count[ib] == 1:
        chain = [ib]
        while chain[-1] != ia:
            chain.append(parent[chain[-1]])
        path = tuple(X.points[i] for i in reversed(chain))
    return PathInfo(dist[ib], count[ib], path)


def boundary(X: DigitalImage) -> tuple[Point, ...]:
    """Bd(X): points of X with at least one c_1-neighbor outside X.

    Only the 2n axis neighbors of each point are probed.
    """
    out = []
    for p in X.points:
        for k in range(X.dim):
            if any(p[:k] + (p[k] + s,) + p[k + 1:] not in X for s in (-1, 1)):
                out.append(p)
                break
    return tuple(out)


def articulation_indices(X: DigitalImage) -> list[int]:
    """Cut vertices by iterative depth-first low-link."""

    def build() -> list[int]:
        n = len(X)
        disc = [-1] * n
        low = [0] * n
        cut = [False] * n
        clock = 0
        for root in range(n):
            if disc[root] != -1:
                continue
            disc[root] = low[root] = clock
            clock += 1
            root_children = 0
            stack = [(root, -1, iter(X.neighbor_indices(root)))]
            while stack:
                v, par, it = stack[-1]
                advanced = False
                for w in it:
                    if disc[w] == -1:
                        disc[w] = low[w] = clock
                        clock += 1
                        if v == root:
                            root_children += 1
                        stack.append((w, v, iter(X.neighbor_indices(w))))
                        advanced = True
                        break
                    if w != par:
                        low[v] = min(low[v], disc[w])
                if advanced:
                    continue
                stack.pop()
                if par != -1:
                    low[par] = min(low[par], low[v])
                    if par != root and low[v] >= disc[par]:
                        cut[par] = True
            if root_children > 1:
                cut[root] = True
        return [i for i in range(n) if cut[i]]

    return X.cached("articulation", build)


def articulation_points(X: DigitalImage) -> tuple[Point, ...]:
    require_connected(X)
    return tuple(X.points[i] for i in articulation_indices(X))


def articulation_points_bruteforce(X: DigitalImage) -> tuple[Point, ...]:
    """Remove each point in turn and recount components."""
    require_connected(X)
    out = []
    for i, p in enumerate(X.points):
        labels = _component_labels(X, frozenset({i}))
        if len({c for j, c in enumerate(labels) if j != i}) > 1:
            out.append(p)
    return tuple(out)


def components_without(X: DigitalImage, i: int) -> list[int]:
    """Component labels of X minus the point with index i (label -1 at i)."""
    return X.cached(("split", i), lambda: _component_labels(X, frozenset({i})))


@dataclass(frozen=True)
class Isometry:
    """Lattice symmetry x -> signs * x[perm] + shift.

    Coordinate permutations, axis reflections and translations preserve
    every c_u adjacency, so each such map is a digital isomorphism.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    shift: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ImageError(f"not a permutation: {self.perm}")
        if len(self.signs) != n or len(self.shift) != n:
            raise ImageError("perm, signs and shift must have equal length")
        if any(s not in (-1, 1) for s in self.signs):
            raise ImageError(f"signs must be +-1: {self.signs}")

    @classmethod
    def identity(cls, n: int) -> Isometry:
        return cls(tuple(range(n)), (1,) * n, (0,) * n)

    @classmethod
    def translation(cls, shift: Sequence[int]) -> Isometry:
        n = len(shift)
        return cls(tuple(range(n)), (1,) * n, tuple(shift))

    @classmethod
    def random(cls, n: int, rng: random.Random, span: int = 20) -> Isometry:
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(
            tuple(perm),
            tuple(rng.choice((-1, 1)) for _ in range(n)),
            tuple(rng.randint(-span, span) for _ in range(n)),
        )

    def __call__(self, p: Sequence[int]) -> Point:
        return tuple(s * p[k] + t for s, k, t in zip(self.signs, self.perm, self.shift))

    def map_set(self, ps: Iterable[Sequence[int]]) -> tuple[Point, ...]:
        return tuple(sorted(self(p) for p in ps))

    def inverse(self) -> Isometry:
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        shift = [0] * n
        for k, j in enumerate(self.perm):
            perm[j] = k
            signs[j] = self.signs[k]
            shift[j] = -self.signs[k] * self.shift[k]
        return Isometry(tuple(perm), tuple(signs), tuple(shift))


def apply_isometry(X: DigitalImage, g: Isometry) -> DigitalImage:
    """Image of X under a lattice symmetry; transport point sets with ``g.map_set``."""
    if len(g.perm) != X.dim:
        raise ImageError(f"isometry of dimension {len(g.perm)} applied to {X.dim}-dimensional image")
    return DigitalImage((g(p) for p in X.points), X.u, X.dim, X.name)
