import numpy as np
import pytest
from hypothesis import strategies as st

from stablematch.profile import PreferenceProfile


@st.composite
def profiles(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    row = st.permutations(list(range(1, n + 1))).map(tuple)
    men = tuple(draw(row) for _ in range(n))
    women = tuple(draw(row) for _ in range(n))
    return PreferenceProfile(men, women)


@pytest.fixture
def rng():
    return np.random.default_rng(20210521)


@pytest.fixture
def worked_example():
    """The 3x3 profile with two stable matchings, costs 12 and 11."""
    return PreferenceProfile(men=((1, 2, 3), (2, 3, 1), (3, 2, 1)),
                             women=((3, 1, 2), (1, 2, 3), (1, 2, 3)))
