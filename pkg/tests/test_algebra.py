from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnakayama import reps as R
from hnakayama.algebra import (
    Algebra,
    FirstEntryNotOne,
    GrowthViolation,
    KupischError,
    enumerate_os,
    enumerate_os_bruteforce,
    leads_to,
    validate_kupisch,
)

from .conftest import kupisch_series, small_algebras


def test_valid_identity_series():
    assert list(validate_kupisch([1, 2, 3])) == [1, 2, 3]


def test_growth_violation_reports_index():
    with pytest.raises(GrowthViolation) as err:
        validate_kupisch([1, 3])
    assert err.value.index == 1


def test_first_entry_must_be_one():
    with pytest.raises(FirstEntryNotOne):
        validate_kupisch([2, 2])


def test_errors_share_a_base():
    assert issubclass(GrowthViolation, KupischError)
    assert issubclass(FirstEntryNotOne, KupischError)


def test_indecomposables_of_a12(a12):
    assert enumerate_os(a12.kupisch, 3) == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]


def test_vertices_of_a12(a12):
    assert enumerate_os(a12.kupisch, 2) == [(0, 0), (0, 1), (1, 1)]


def test_nineteen_indecomposables_for_slice_algebra(branched_slice_algebra):
    assert len(branched_slice_algebra.indecs) == 19


def test_leads_to_examples():
    assert leads_to((0, 0, 0), (0, 0, 1))
    assert not leads_to((0, 0, 0), (0, 1, 1))


def test_tau_examples(a12):
    assert a12.tau_d((1, 1, 1)) == (0, 0, 0)
    assert a12.tau_d((0, 0, 1)) is None
    assert a12.tau_d((0, 0, 0), "inverse") == (1, 1, 1)


def test_projectivity_examples(a12):
    assert a12.projective_of((1, 1)) == (0, 1, 1)
    assert a12.projectivity((1, 1, 1)) == (False, None)
    assert a12.projectivity((0, 0, 1)) == (True, (0, 1))
    assert not a12.is_injective((0, 0, 0))


def test_projective_module_can_be_injective():
    # l = (1, 2, 2): (0,1,1) is the module 3/4, projective-injective, while (1,2,2) is also projective
    alg = Algebra.from_kupisch((1, 2, 2), 2)
    assert alg.is_injective((0, 1, 1))
    assert alg.tau_inverse((0, 1, 1)) is None


def test_stable_hom_vanishes_through_injective():
    alg = Algebra.from_kupisch((1, 2, 2), 2)
    assert leads_to((0, 1, 1), (1, 1, 1))
    assert alg.stable_hom_dim((0, 1, 1), (1, 1, 1)) == 0
    assert alg.ext_d_dim((2, 2, 2), (0, 1, 1)) == 0


@given(kupisch_series(5), st.integers(min_value=1, max_value=3))
def test_enumeration_matches_brute_force(kupisch, k):
    ks = validate_kupisch(kupisch)
    assert enumerate_os(ks, k) == enumerate_os_bruteforce(ks, k)


@given(small_algebras(max_length=5))
def test_leads_to_is_reflexive_and_monotone(alg):
    for x, y in itertools.product(alg.indecs, repeat=2):
        assert leads_to(x, x)
        if leads_to(x, y):
            assert all(a <= b for a, b in zip(x, y))


@given(small_algebras(max_length=5))
def test_tau_round_trips(alg):
    for x in alg.indecs:
        t = alg.tau(x)
        if t is not None:
            assert alg.tau_inverse(t) == x
        u = alg.tau_inverse(x)
        if u is not None:
            assert alg.tau(u) == x


@given(small_algebras(max_length=5))
def test_one_projective_and_one_injective_per_vertex(alg):
    assert len(alg.projectives) == len(alg.vertices)
    assert len(alg.injectives) == len(alg.vertices)
    assert sorted(alg.top(p) for p in alg.projectives) == sorted(alg.vertices)


@given(small_algebras())
def test_projectives_and_injectives_match_representations(alg):
    proj = {tuple(R.projective_rep(alg, v).dims) for v in alg.vertices}
    inj = {tuple(R.injective_rep(alg, v).dims) for v in alg.vertices}
    for x in alg.indecs:
        dims = tuple(R.realize_module(alg, x).dims)
        # interval modules are determined by their dimension vectors
        assert (dims in proj) == alg.is_projective(x)
        assert (dims in inj) == alg.is_injective(x)


@given(small_algebras())
def test_leads_to_matches_hom(alg):
    reps = {x: R.realize_module(alg, x) for x in alg.indecs}
    for x, y in itertools.product(alg.indecs, repeat=2):
        assert R.hom_dim(reps[x], reps[y]) == (1 if leads_to(x, y) else 0)
