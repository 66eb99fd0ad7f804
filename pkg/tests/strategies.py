import random

from hypothesis import strategies as st

from corpus import random_connected_image


@st.composite
def images(draw, dims=(2, 3), min_size=1, max_size=8):
    """Random connected images, grown from a drawn seed."""
    dim = draw(st.sampled_from(dims))
    u = draw(st.integers(1, dim))
    size = draw(st.integers(min_size, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_image(random.Random(seed), dim, u, size)


@st.composite
def images_with_subset(draw, **kwargs):
    X = draw(images(**kwargs))
    picks = draw(st.lists(st.booleans(), min_size=len(X), max_size=len(X)))
    return X, tuple(p for p, keep in zip(X.points, picks) if keep)
