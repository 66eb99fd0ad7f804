"""Exhaustive ground truth for freezing questions.

Everything here reduces to one constraint problem: assign each point x a
target f(x) in X such that adjacent points go to equal or adjacent points,
with some points pinned to themselves. Domains are bitmasks over the
canonical point order and are kept arc-consistent after every assignment.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from freezeset.analysis import degree_one_points, justified_extrema
from freezeset.errors import BudgetExhaustedError, CapExceededError
from freezeset.lattice import DigitalImage, Point, articulation_points, boundary, require_connected
from freezeset.selfmaps import SelfMap

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "FREEZE_BUDGET"

FROZEN = "frozen"
REFUTED = "refuted"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchBudget:
    """Node limit for one search; ``None`` means unlimited."""

    max_nodes: int | None = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be at least 1")

    @classmethod
    def from_env(cls) -> SearchBudget:
        raw = os.environ.get(BUDGET_ENV)
        return cls(int(raw)) if raw else cls()

    @classmethod
    def unlimited(cls) -> SearchBudget:
        return cls(None)


@dataclass(frozen=True)
class Verdict:
    outcome: str
    nodes_explored: int
    witness: SelfMap | None = None

    @property
    def frozen(self) -> bool:
        return self.outcome == FROZEN

    @property
    def refuted(self) -> bool:
        return self.outcome == REFUTED

    @property
    def exhausted(self) -> bool:
        return self.outcome == BUDGET_EXHAUSTED


@dataclass(frozen=True)
class SearchOutcome:
    """Raw result of :func:`search_nonidentity_map`."""

    witness: SelfMap | None
    nodes_explored: int
    exhausted: bool


class _Exhausted(Exception):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Engine:
    def __init__(self, X: DigitalImage, prune_pulling: bool = True, budget: int | None = None):
        self.X = X
        self.n = len(X)
        self.nbrs = [X.neighbor_indices(i) for i in range(self.n)]
        self.closed = [(1 << i) | sum(1 << j for j in self.nbrs[i]) for i in range(self.n)]
        self.full = (1 << self.n) - 1
        self.prune_pulling = prune_pulling
        self.budget = budget
        self.nodes = 0
        self._support: dict[int, int] = {}
        self._pull: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        self._below: dict[tuple[int, int], int] = {}
        self._above: dict[tuple[int, int], int] = {}

    def support(self, mask: int) -> int:
        s = self._support.get(mask)
        if s is None:
            s = 0
            for a in _bits(mask):
                s |= self.closed[a]
            self._support[mask] = s
        return s

    def _coord_mask(self, k: int, c: int, below: bool) -> int:
        cache = self._below if below else self._above
        m = cache.get((k, c))
        if m is None:
            pts = self.X.points
            m = sum(1 << v for v in range(self.n) if (pts[v][k] < c if below else pts[v][k] > c))
            cache[(k, c)] = m
        return m

    def pull_restrictions(self, x: int, a: int) -> tuple[tuple[int, int], ...]:
        """Domain masks forced on neighbors of x once f(x) = a, by the pulling lemma."""
        key = (x, a)
        r = self._pull.get(key)
        if r is None:
            pts = self.X.points
            px, pa = pts[x], pts[a]
            acc: dict[int, int] = {}
            for k in range(self.X.dim):
                if pa[k] < px[k]:
                    for y in self.nbrs[x]:
                        if pts[y][k] > px[k]:
                            acc[y] = acc.get(y, self.full) & self._coord_mask(k, pts[y][k], True)
                elif pa[k] > px[k]:
                    for y in self.nbrs[x]:
                        if pts[y][k] < px[k]:
                            acc[y] = acc.get(y, self.full) & self._coord_mask(k, pts[y][k], False)
            r = self._pull[key] = tuple(sorted(acc.items()))
        return r

    def propagate(self, dom: list[int], queue: Iterable[int]) -> bool:
        work = deque(queue)
        nbrs = self.nbrs
        while work:
            x = work.popleft()
            dx = dom[x]
            sup = self.support(dx)
            for y in nbrs[x]:
                new = dom[y] & sup
                if new != dom[y]:
                    if not new:
                        return False
                    dom[y] = new
                    work.append(y)
            if self.prune_pulling and dx & (dx - 1) == 0:
                for y, mask in self.pull_restrictions(x, dx.bit_length() - 1):
                    new = dom[y] & mask
                    if new != dom[y]:
                        if not new:
                            return False
                        dom[y] = new
                        work.append(y)
        return True

    def initial(self, fixed: Iterable[int]) -> list[int] | None:
        dom = [self.full] * self.n
        for a in fixed:
            dom[a] = 1 << a
        if not self.propagate(dom, range(self.n)):
            return None
        return dom

    def solve(self, dom: list[int], order: Sequence[int], nonidentity: bool) -> Iterator[tuple[int, ...]]:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Exhausted
        if nonidentity and all(d == 1 << v for v, d in enumerate(dom)):
            return
        var = next((v for v in order if dom[v] & (dom[v] - 1)), None)
        if var is None:
            targets = tuple(d.bit_length() - 1 for d in dom)
            if not (nonidentity and all(t == v for v, t in enumerate(targets))):
                yield targets
            return
        values = list(_bits(dom[var]))
        if nonidentity and dom[var] & (1 << var):
            values.remove(var)
            values.append(var)
        for val in values:
            nd = dom.copy()
            nd[var] = 1 << val
            if self.propagate(nd, (var,)):
                yield from self.solve(nd, order, nonidentity)


def _bfs_order(X: DigitalImage, sources: Sequence[int]) -> list[int]:
    seen = set(sources)
    order = list(sources)
    queue = deque(sources)
    for start in itertools.chain([None], range(len(X))):
        if start is not None:
            if start in seen:
                continue
            seen.add(start)
            order.append(start)
            queue.append(start)
        while queue:
            v = queue.popleft()
            for w in X.neighbor_indices(v):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
    return order


def _budget_nodes(budget: SearchBudget | int | None) -> int | None:
    if budget is None:
        return SearchBudget.from_env().max_nodes
    if isinstance(budget, SearchBudget):
        return budget.max_nodes
    return SearchBudget(int(budget)).max_nodes


def _branch_worker(args):
    X, fixed, prune, budget, var, val = args
    eng = _Engine(X, prune, budget)
    dom = eng.initial(fixed)
    order = _bfs_order(X, fixed)
    dom[var] = 1 << val
    try:
        if not eng.propagate(dom, (var,)):
            return None, eng.nodes, False
        return next(eng.solve(dom, order, True), None), eng.nodes, False
    except _Exhausted:
        return None, eng.nodes, True


def search_nonidentity_map(
    X: DigitalImage,
    A: Iterable[Sequence[int]],
    budget: SearchBudget | int | None = None,
    *,
    prune_pulling: bool = True,
    threads: int = 1,
) -> SearchOutcome:
    """Look for a continuous self-map that fixes A pointwise and is not the identity.

    Variables are taken breadth-first from A; each variable tries its
    non-identity values before the identity value. With ``threads > 1`` the
    first branching variable's values are explored in separate processes and
    the witness of the earliest successful branch is kept, which is the one a
    sequential run returns.
    """
    require_connected(X)
    fixed = X.indices(A)
    limit = _budget_nodes(budget)
    eng = _Engine(X, prune_pulling, limit)
    dom = eng.initial(fixed)
    if dom is None:
        return SearchOutcome(None, 1, False)
    order = _bfs_order(X, fixed)
    if threads > 1:
        var = next((v for v in order if dom[v] & (dom[v] - 1)), None)
        if var is not None:
            values = list(_bits(dom[var]))
            if dom[var] & (1 << var):
                values.remove(var)
                values.append(var)
            jobs = [(X, fixed, prune_pulling, limit, var, val) for val in values]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_branch_worker, jobs))
            nodes = eng.nodes + sum(r[1] for r in results)
            for targets, _, _ in results:
                if targets is not None:
                    return SearchOutcome(SelfMap(X, targets), nodes, False)
            return SearchOutcome(None, nodes, any(r[2] for r in results))
    try:
        targets = next(eng.solve(dom, order, True), None)
    except _Exhausted:
        return SearchOutcome(None, eng.nodes, True)
    witness = SelfMap(X, targets) if targets is not None else None
    return SearchOutcome(witness, eng.nodes, False)


def verify_freezing(
    X: DigitalImage,
    A: Iterable[Sequence[int]],
    budget: SearchBudget | int | None = None,
    *,
    prune_pulling: bool = True,
    threads: int = 1,
) -> Verdict:
    """Decide whether A is a freezing set for X.

    ``frozen`` is only returned after the search space is exhausted; a
    ``refuted`` verdict carries a continuous non-identity witness fixing A.
    """
    res = search_nonidentity_map(X, A, budget, prune_pulling=prune_pulling, threads=threads)
    if res.witness is not None:
        return Verdict(REFUTED, res.nodes_explored, res.witness)
    if res.exhausted:
        return Verdict(BUDGET_EXHAUSTED, res.nodes_explored)
    return Verdict(FROZEN, res.nodes_explored)


def _require(verdict: Verdict, what: str) -> Verdict:
    if verdict.exhausted:
        raise BudgetExhaustedError(f"budget exhausted while verifying {what}")
    return verdict


def is_minimal_freezing(
    X: DigitalImage, A: Iterable[Sequence[int]], budget: SearchBudget | int | None = None
) -> bool:
    """True iff A freezes X and no single-point deletion of A does.

    Supersets of freezing sets freeze, so single deletions suffice.
    """
    pts = sorted({tuple(p) for p in A})
    if not _require(verify_freezing(X, pts, budget), "the full set").frozen:
        return False
    for p in pts:
        rest = [q for q in pts if q != p]
        if _require(verify_freezing(X, rest, budget), f"the set without {p}").frozen:
            return False
    return True


def minimum_freezing_sets(
    X: DigitalImage,
    *,
    restrict_to_boundary: bool = False,
    must_include: Iterable[Sequence[int]] | None = None,
    must_exclude: Iterable[Sequence[int]] | None = None,
    theorem_pruning: bool = True,
    budget: SearchBudget | int | None = None,
    pool_cap: int = 20,
) -> list[tuple[Point, ...]]:
    """All minimum-cardinality freezing sets drawn from a candidate pool.

    With ``theorem_pruning`` the defaults pin degree-1 points and justified
    extrema into every candidate and drop articulation points from the pool.
    Explicit ``must_include``/``must_exclude`` override those defaults.

    Each refutation yields a witness map; every later candidate must contain
    a point that witness moves, so candidates are enumerated as hitting sets
    of the moved sets found so far.
    """
    require_connected(X)
    include: set[Point] = set()
    exclude: set[Point] = set()
    if theorem_pruning:
        include = set(degree_one_points(X)) | set(justified_extrema(X))
        w = articulation_points(X)
        if w and len(w) < len(X):
            exclude = set(w)
    if must_include is not None:
        include = {tuple(p) for p in must_include}
    if must_exclude is not None:
        exclude = {tuple(p) for p in must_exclude}
    for p in include | exclude:
        X.index(p)
    base = boundary(X) if restrict_to_boundary else X.points
    pool = [p for p in base if p not in include and p not in exclude]
    if len(pool) > pool_cap:
        raise CapExceededError(f"candidate pool of {len(pool)} points exceeds cap {pool_cap}")
    pool_bit = {p: 1 << k for k, p in enumerate(pool)}
    hits: list[int] = []
    base_set = sorted(include)
    for size in range(len(pool) + 1):
        found = []
        for combo in itertools.combinations(range(len(pool)), size):
            mask = sum(1 << k for k in combo)
            if any(not mask & h for h in hits):
                continue
            candidate = tuple(sorted(base_set + [pool[k] for k in combo]))
            v = _require(verify_freezing(X, candidate, budget), f"candidate {candidate}")
            if v.frozen:
                found.append(candidate)
                continue
            moved = sum(pool_bit.get(p, 0) for p in v.witness.moved())
            if not moved:
                return []
            hits.append(moved)
        if found:
            return found
    return []


def freezing_family(
    X: DigitalImage,
    budget: SearchBudget | int | None = None,
    cap: int = 12,
) -> list[bool]:
    """Freezing status of every subset of X, indexed by bitmask over canonical order.

    Supersets of a freezing set freeze; subsets of a witness's fixed set do
    not. Only subsets settled by neither rule reach the search.
    """
    require_connected(X)
    n = len(X)
    if n > cap:
        raise CapExceededError(f"{n} points exceeds brute-force cap {cap}")

    def build() -> list[bool]:
        frozen = [False] * (1 << n)
        fixsets: list[int] = []
        for mask in sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m)):
            if any(frozen[mask & ~(1 << b)] for b in _bits(mask)):
                frozen[mask] = True
                continue
            if any(mask & ~fs == 0 for fs in fixsets):
                continue
            v = _require(verify_freezing(X, [X.points[b] for b in _bits(mask)], budget), "a subset")
            if v.frozen:
                frozen[mask] = True
            else:
                fix = sum(1 << i for i, t in enumerate(v.witness.targets) if i == t)
                fixsets.append(fix)
        return frozen

    return X.cached("freezing_family", build)


def is_excludable_bruteforce(
    X: DigitalImage,
    Wq: Iterable[Sequence[int]],
    budget: SearchBudget | int | None = None,
    cap: int = 12,
) -> bool:
    """True iff removing Wq from any freezing set leaves a freezing set (or nothing)."""
    wmask = sum(1 << i for i in X.indices(Wq))
    frozen = freezing_family(X, budget, cap)
    return all(
        frozen[m & ~wmask]
        for m in range(len(frozen))
        if frozen[m] and m & ~wmask
    )


def enumerate_continuous_maps(
    X: DigitalImage,
    fix: Iterable[Sequence[int]] = (),
    limit: int | None = None,
    *,
    prune_pulling: bool = True,
) -> Iterator[SelfMap]:
    """Continuous self-maps fixing ``fix`` pointwise, in lexicographic order of targets."""
    fixed = X.indices(fix)
    eng = _Engine(X, prune_pulling)
    dom = eng.initial(fixed)
    if dom is None or limit == 0:
        return
    for k, targets in enumerate(eng.solve(dom, range(len(X)), False), 1):
        yield SelfMap(X, targets)
        if limit is not None and k >= limit:
            return
