import itertools

import pytest
from hypothesis import given, settings

from freezeset import (
    CapExceededError,
    DigitalImage,
    ImageError,
    NotContinuousError,
    SelfMap,
    check_pulling_consistency,
    enumerate_continuous_maps,
    fixed_points,
    is_continuous,
    is_continuous_by_definition,
)
from freezeset.lattice import subset_is_connected
from freezeset.selfmaps import all_self_maps, connected_subsets

from corpus import KITE
from strategies import images


@pytest.fixture
def slant_map(slant_image):
    return SelfMap.with_changes(slant_image, {(1, 1): (0, 0)})


@pytest.fixture
def square_map(square2):
    return SelfMap.with_changes(square2, {(0, 1): (1, 1), (1, 0): (1, 1)})


def test_segment_counterexample_maps_are_continuous(slant_image, slant_map, square2, square_map):
    for X, f in ((slant_image, slant_map), (square2, square_map)):
        assert is_continuous(X, f)
        assert is_continuous_by_definition(X, f)
        assert is_continuous(X, SelfMap.identity(X))


def test_two_point_maps():
    X = DigitalImage([(0, 0), (1, 0)], 1)
    swap = SelfMap.from_mapping(X, {(0, 0): (1, 0), (1, 0): (0, 0)})
    const = SelfMap.from_mapping(X, {(0, 0): (0, 0), (1, 0): (0, 0)})
    for f in (swap, const):
        assert is_continuous(X, f)
        assert is_continuous_by_definition(X, f)


def test_tearing_map_is_discontinuous():
    X = DigitalImage([(0, 0), (1, 0), (2, 0)], 1)
    f = SelfMap.from_mapping(X, {(0, 0): (0, 0), (1, 0): (2, 0), (2, 0): (2, 0)})
    assert not is_continuous(X, f)
    assert not is_continuous_by_definition(X, f)


def test_fixed_points(kite, slant_map):
    K = kite
    assert fixed_points(SelfMap.identity(K)) == K.points
    assert set(fixed_points(slant_map)) == set(slant_map.image.points) - {(1, 1)}
    X = DigitalImage([(0, 0), (1, 0)], 1)
    assert fixed_points(SelfMap.from_mapping(X, {(0, 0): (0, 0), (1, 0): (0, 0)})) == ((0, 0),)


def test_selfmap_validation(kite):
    with pytest.raises(ImageError):
        SelfMap.from_mapping(kite, {(0, 1): (0, 1)})
    with pytest.raises(ImageError):
        SelfMap.with_changes(kite, {(0, 1): (9, 9)})
    with pytest.raises(ImageError):
        SelfMap(kite, (0,) * 3)
    other = DigitalImage(KITE, 1)
    with pytest.raises(ImageError):
        is_continuous(other, SelfMap.identity(kite))


def test_definition_cap(kite):
    big = DigitalImage([(x, 0) for x in range(13)], 1)
    with pytest.raises(CapExceededError):
        is_continuous_by_definition(big, SelfMap.identity(big))
    assert is_continuous_by_definition(kite, SelfMap.identity(kite))


@settings(max_examples=80, deadline=None)
@given(images(max_size=9))
def test_connected_subsets_match_bruteforce(X):
    got = list(connected_subsets(X))
    assert len(got) == len(set(got))
    n = len(X)
    expected = {
        tuple(i for i in range(n) if m >> i & 1)
        for m in range(1, 1 << n)
        if subset_is_connected(X, [i for i in range(n) if m >> i & 1])
    }
    assert set(got) == expected


@settings(max_examples=25, deadline=None)
@given(images(max_size=4))
def test_criteria_agree_exhaustively(X):
    for f in all_self_maps(X):
        assert is_continuous(X, f) == is_continuous_by_definition(X, f)


@settings(max_examples=30, deadline=None)
@given(images(max_size=5))
def test_composition_of_continuous_maps(X):
    maps = list(itertools.islice(enumerate_continuous_maps(X), 40))
    for f in maps[:8]:
        for g in maps[-8:]:
            assert is_continuous(X, f.compose(g))


@settings(max_examples=30, deadline=None)
@given(images(max_size=6))
def test_fixed_set_of_retraction(X):
    for f in itertools.islice(enumerate_continuous_maps(X), 200):
        fix = set(fixed_points(f))
        for p in fix:
            assert f(p) == p
        image = {f(p) for p in X}
        if image == fix:
            assert f.compose(f) == f


@settings(max_examples=40, deadline=None)
@given(images(max_size=6))
def test_pulling_holds_for_every_continuous_map(X):
    for f in enumerate_continuous_maps(X):
        assert check_pulling_consistency(X, f)


def test_pulling_examples(square2, square_map, kite):
    assert check_pulling_consistency(kite, SelfMap.identity(kite))
    assert check_pulling_consistency(square2, square_map)
    X = DigitalImage([(0, 0), (1, 0), (2, 0)], 1)
    tear = SelfMap.from_mapping(X, {(0, 0): (0, 0), (1, 0): (2, 0), (2, 0): (2, 0)})
    with pytest.raises(NotContinuousError):
        check_pulling_consistency(X, tear)
