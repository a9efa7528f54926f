import os

import numpy as np
import pytest

from hypothesis import settings, strategies as st

settings.register_profile("stress", max_examples=1000, deadline=None)
settings.register_profile("default", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

COUNTER_JOINT = [[0.25, 0.25], [0.5, 0.0]]


def random_distribution(rng, n, sparse=False):
    x = rng.exponential(size=n)
    if sparse:
        x[rng.random(n) < 0.3] = 0.0
        if not x.any():
            x[0] = 1.0
    return x / x.sum()


def random_joint(rng, n, m):
    x = rng.exponential(size=(n, m))
    return x / x.sum()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def distributions(draw, min_n=2, max_n=6, full_support=False, min_positive=0.0):
    # min_positive zeroes tiny masses, for properties that multiply probabilities
    n = draw(st.integers(min_n, max_n))
    lo = 1e-3 if full_support else 0.0
    xs = draw(st.lists(st.floats(lo, 1.0), min_size=n, max_size=n))
    xs = [x if x >= min_positive else 0.0 for x in xs]
    if sum(xs) == 0:
        xs[0] = 1.0
    s = sum(xs)
    return np.array([x / s for x in xs])


qs = st.sampled_from([0.5, 0.8, 1.0, 1.5, 2.0, 3.0])
taus = st.sampled_from([-0.5, -1.0, -2.0])
