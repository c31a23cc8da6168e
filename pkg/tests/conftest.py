from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hnakayama.algebra import Algebra

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

# Kupisch series used across the suite; the last is the largest test algebra.
SMALL = [(1, 2), (1, 2, 2), (1, 2, 3)]
TEST_ALGEBRAS = SMALL + [(1, 2, 3, 2, 3)]


@st.composite
def kupisch_series(draw, max_length: int = 4):
    n = draw(st.integers(min_value=1, max_value=max_length))
    out = [1]
    for _ in range(n - 1):
        out.append(draw(st.integers(min_value=2, max_value=out[-1] + 1)))
    return tuple(out)


@st.composite
def small_algebras(draw, max_length: int = 4, max_d: int = 3, max_indecs: int = 14):
    kupisch = draw(kupisch_series(max_length))
    d = draw(st.integers(min_value=2, max_value=max_d))
    alg = Algebra.from_kupisch(kupisch, d)
    if len(alg.indecs) > max_indecs:
        alg = Algebra.from_kupisch(kupisch, 2)
    if len(alg.indecs) > max_indecs:
        alg = Algebra.from_kupisch(kupisch[:2], 2)
    return alg


@pytest.fixture(scope="session")
def a12():
    """l = (1, 2), d = 2: labels (0,0,0)=3, (0,0,1)=2/3, (0,1,1)=1/2, (1,1,1)=1."""
    return Algebra.from_kupisch((1, 2), 2)


@pytest.fixture(scope="session")
def path_slice_algebra():
    return Algebra.from_kupisch((1, 2, 2), 2)


@pytest.fixture(scope="session")
def branched_slice_algebra():
    return Algebra.from_kupisch((1, 2, 3, 2, 3), 2)
