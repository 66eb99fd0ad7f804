import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from freezeset import (
    BudgetExhaustedError,
    CapExceededError,
    DigitalImage,
    SearchBudget,
    analyze,
    boundary,
    enumerate_continuous_maps,
    fixed_points,
    is_continuous,
    is_excludable_bruteforce,
    is_minimal_freezing,
    minimum_freezing_sets,
    search_nonidentity_map,
    verify_freezing,
)
from freezeset.oracle import freezing_family

from corpus import KITE_A, SQUARE, corpus
from naive import naive_continuous_maps, naive_is_freezing
from strategies import images, images_with_subset

CORNERS = [(0, 0), (0, 2), (2, 0), (2, 2)]
C1_CORNER_SET = tuple(CORNERS)
C2_SQUARE_BOUNDARY = tuple(p for p in SQUARE if p != (1, 1))

# Counts frozen from the plain backtracking enumerator in tests/naive.py.
C1_SQUARE_MAP_COUNT = 63997


def test_kite_set_frozen(kite):
    v = verify_freezing(kite, KITE_A)
    assert v.frozen and v.witness is None
    assert search_nonidentity_map(kite, KITE_A).witness is None


def test_kite_set_without_extremum_refuted(kite):
    A = [p for p in KITE_A if p != (3, 0)]
    v = verify_freezing(kite, A)
    assert v.refuted
    f = v.witness
    assert is_continuous(kite, f) and not f.is_identity
    assert set(A) <= set(fixed_points(f))
    assert (3, 0) in f.moved()


def test_whole_image_frozen(kite, diamond):
    for X in (kite, diamond):
        assert verify_freezing(X, X.points).frozen


def test_square_corners(square1, square2):
    assert verify_freezing(square1, CORNERS).frozen
    v = verify_freezing(square2, CORNERS)
    assert v.refuted
    assert set(CORNERS) <= set(fixed_points(v.witness))
    assert is_continuous(square2, v.witness)


def test_square_corners_match_naive(square1, square2):
    assert naive_is_freezing(square1, CORNERS) is True
    assert naive_is_freezing(square2, CORNERS) is False


def test_kite_boundary_frozen(kite):
    assert verify_freezing(kite, boundary(kite)).frozen


def test_minimality(kite):
    assert is_minimal_freezing(kite, KITE_A)
    assert not is_minimal_freezing(kite, boundary(kite))
    assert not is_minimal_freezing(kite, kite.points)
    assert not is_minimal_freezing(kite, [(0, 1)])


def test_minimum_sets_examples(kite, square1, square2):
    assert minimum_freezing_sets(kite, restrict_to_boundary=True) == [tuple(sorted(KITE_A))]
    assert minimum_freezing_sets(kite) == [tuple(sorted(KITE_A))]
    assert minimum_freezing_sets(square1, theorem_pruning=False) == [C1_CORNER_SET]
    assert minimum_freezing_sets(square2, theorem_pruning=False) == [C2_SQUARE_BOUNDARY]


def test_minimum_sets_singleton():
    assert minimum_freezing_sets(DigitalImage([(3, 3)], 2)) == [()]
    assert verify_freezing(DigitalImage([(3, 3)], 2), []).frozen


def test_minimum_sets_pool_cap():
    X = DigitalImage([(x, y) for x in range(5) for y in range(5)], 1)
    with pytest.raises(CapExceededError):
        minimum_freezing_sets(X, theorem_pruning=False, pool_cap=10)


def test_minimum_sets_overrides(kite):
    # forcing an articulation point in cannot beat the true minimum size
    sets = minimum_freezing_sets(kite, must_include=[(2, 1)], must_exclude=[])
    assert {len(s) for s in sets} == {5}
    assert all((2, 1) in s for s in sets)


def test_excludable_examples(kite):
    assert is_excludable_bruteforce(kite, [(1, 2), (2, 1)])
    assert not is_excludable_bruteforce(kite, [(0, 1)])
    assert is_excludable_bruteforce(kite, [])
    with pytest.raises(CapExceededError):
        is_excludable_bruteforce(kite, [], cap=8)


def test_enumerate_examples(kite):
    two = DigitalImage([(0, 0), (1, 0)], 1)
    assert len(list(enumerate_continuous_maps(two))) == 4
    assert len(list(enumerate_continuous_maps(DigitalImage([(1, 1)], 1)))) == 1
    only = list(enumerate_continuous_maps(kite, fix=kite.points))
    assert len(only) == 1 and only[0].is_identity
    assert len(list(enumerate_continuous_maps(kite, limit=7))) == 7
    assert list(enumerate_continuous_maps(kite, limit=0)) == []


def test_enumerate_square_count(square1):
    assert sum(1 for _ in enumerate_continuous_maps(square1)) == C1_SQUARE_MAP_COUNT


def test_enumeration_order_is_lexicographic(diamond):
    targets = [f.targets for f in enumerate_continuous_maps(diamond, limit=300)]
    assert targets == sorted(targets)


@settings(max_examples=40, deadline=None)
@given(images(max_size=5))
def test_enumeration_matches_naive(X):
    got = {f.targets for f in enumerate_continuous_maps(X)}
    want = set(naive_continuous_maps(X))
    assert got == want


@settings(max_examples=80, deadline=None)
@given(images_with_subset(max_size=7))
def test_verdict_matches_naive(case):
    X, A = case
    assert verify_freezing(X, A).frozen == naive_is_freezing(X, A)


@settings(max_examples=60, deadline=None)
@given(images_with_subset(max_size=10))
def test_refutation_witness_sound(case):
    X, A = case
    v = verify_freezing(X, A)
    if v.refuted:
        f = v.witness
        assert is_continuous(X, f)
        assert set(A) <= set(fixed_points(f))
        assert not f.is_identity


@settings(max_examples=60, deadline=None)
@given(images_with_subset(max_size=10))
def test_pruning_does_not_change_verdicts(case):
    X, A = case
    a = verify_freezing(X, A, prune_pulling=True)
    b = verify_freezing(X, A, prune_pulling=False)
    assert a.outcome == b.outcome


@settings(max_examples=40, deadline=None)
@given(images_with_subset(max_size=10), st.randoms(use_true_random=False))
def test_supersets_of_frozen_sets_freeze(case, rng):
    X, A = case
    if not verify_freezing(X, A).frozen:
        return
    rest = [p for p in X if p not in A]
    for _ in range(3):
        extra = rng.sample(rest, rng.randint(0, len(rest)))
        assert verify_freezing(X, list(A) + extra).frozen


def test_budget_exhaustion(kite):
    v = verify_freezing(kite, [], SearchBudget(1))
    assert v.exhausted and not v.frozen and not v.refuted
    with pytest.raises(BudgetExhaustedError):
        is_minimal_freezing(kite, KITE_A, budget=SearchBudget(1))
    with pytest.raises(BudgetExhaustedError):
        minimum_freezing_sets(kite, theorem_pruning=False, budget=1)
    assert verify_freezing(kite, KITE_A, SearchBudget.unlimited()).frozen


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("FREEZE_BUDGET", "17")
    assert SearchBudget.from_env().max_nodes == 17
    monkeypatch.delenv("FREEZE_BUDGET")
    assert SearchBudget.from_env().max_nodes == SearchBudget().max_nodes


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(0)


def test_parallel_search_matches_sequential(kite, square2):
    for X, A in ((kite, KITE_A), (kite, [(0, 1)]), (square2, CORNERS), (kite, [])):
        a = search_nonidentity_map(X, A, threads=1)
        b = search_nonidentity_map(X, A, threads=2)
        assert (a.witness is None) == (b.witness is None)
        if a.witness is not None:
            assert a.witness == b.witness


def test_boundary_freezes_corpus_sample():
    for X in corpus()[::7]:
        assert verify_freezing(X, boundary(X)).frozen


def test_forced_points_are_required_on_corpus():
    for X in corpus()[::5]:
        rep = analyze(X)
        for p in set(rep.d1) | set(rep.t):
            A = [q for q in X if q != p]
            assert verify_freezing(X, A).refuted


def test_freezing_family_consistent(diamond):
    X = diamond
    fam = freezing_family(X)
    rng = random.Random(5)
    for mask in rng.sample(range(1 << len(X)), 40):
        A = [X.points[i] for i in range(len(X)) if mask >> i & 1]
        assert fam[mask] == verify_freezing(X, A).frozen


def test_articulation_points_excludable_on_corpus():
    checked = 0
    for X in corpus()[:60]:
        rep = analyze(X)
        if rep.w and len(rep.w) < len(X):
            assert is_excludable_bruteforce(X, rep.w)
            checked += 1
    assert checked >= 10


def test_minimum_sets_are_minimal(square1):
    for X in corpus()[:25]:
        for A in minimum_freezing_sets(X, restrict_to_boundary=True):
            if A:
                assert is_minimal_freezing(X, A)


def test_minimum_with_and_without_pruning_agree():
    for X in corpus()[:40]:
        a = minimum_freezing_sets(X, restrict_to_boundary=True)
        b = minimum_freezing_sets(X, restrict_to_boundary=True, theorem_pruning=False)
        assert len(a[0]) == len(b[0])
        assert set(a) <= set(b)


def test_minimum_matches_exhaustive_family():
    for X in corpus()[:30]:
        if len(X) > 10:
            continue
        fam = freezing_family(X)
        best = min(bin(m).count("1") for m in range(len(fam)) if fam[m])
        got = minimum_freezing_sets(X, theorem_pruning=False)
        assert len(got[0]) == best
        want = {
            tuple(X.points[i] for i in range(len(X)) if m >> i & 1)
            for m in range(len(fam))
            if fam[m] and bin(m).count("1") == best
        }
        assert set(got) == want


def test_family_marks_kite_set_minimal(kite):
    fam = freezing_family(kite)
    mask = sum(1 << kite.index(p) for p in KITE_A)
    assert fam[mask]
    assert not any(fam[mask & ~(1 << kite.index(p))] for p in KITE_A)
    assert sum(fam) == sum(
        1 for r in range(len(kite) + 1) for c in itertools.combinations(range(len(kite)), r)
        if fam[sum(1 << i for i in c)]
    )
