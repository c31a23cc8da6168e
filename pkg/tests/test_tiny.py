from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnakayama import tiny
from hnakayama.algebra import Algebra
from hnakayama.torsion import enumerate_classes

from .conftest import kupisch_series

THREE, TWO_THREE, ONE_TWO, ONE = (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)
# uniserial modules of l = (1, 2), top first: S3, S2, S1, 2/3, 1/2
S3, S2, S1 = ((0, 0),), ((0, 1),), ((1, 1),)
P2, P1 = ((0, 1), (0, 0)), ((1, 1), (0, 1))


def test_twelve_classical_torsion_classes(a12):
    classes = tiny.classical_torsion_tiny(a12)
    assert len(classes) == 12
    model = tiny.tiny_model(a12)
    for t in classes:
        mask = model.mask(t)
        assert model.is_quotient_closed(mask) and model.is_extension_closed(mask)


def test_minimal_torsion_class_of_row_two(a12):
    assert set(tiny.minimal_containing(a12, [TWO_THREE, ONE_TWO, ONE])) == {P2, S2, P1, S1}


def test_minimal_torsion_class_of_full_and_empty(a12):
    model = tiny.tiny_model(a12)
    assert set(tiny.minimal_containing(a12, a12.indecs)) == set(model.intervals)
    assert tiny.minimal_containing(a12, []) == ()


def test_mod_a_induces(a12):
    model = tiny.tiny_model(a12)
    assert tiny.check_induces(a12, model.intervals)
    assert tiny.restrict_to_M(a12, model.intervals) == a12.indecs


def test_row_two_class_induces(a12):
    assert tiny.check_induces(a12, [P2, S2, P1, S1])


def test_simple_two_does_not_induce(a12):
    by_criterion = tiny.check_induces(a12, [S2])
    by_definition = tiny.induces_by_definition(a12, [S2])
    assert not by_criterion and not by_definition
    assert by_criterion.module == ONE_TWO


def test_criterion_matches_definition_on_all_classes(a12):
    for t in tiny.classical_torsion_tiny(a12):
        assert bool(tiny.check_induces(a12, t)) == bool(tiny.induces_by_definition(a12, t))


def test_branching_quiver_is_rejected():
    with pytest.raises(tiny.NotNakayama):
        tiny.TinyModel(Algebra.from_kupisch((1, 2, 3), 2))


@given(kupisch_series(4))
def test_d1_classes_are_classical_torsion_classes(kupisch):
    alg = Algebra.from_kupisch(kupisch, 1)
    model = tiny.tiny_model(alg)
    if len(model.intervals) > 12:
        return
    classical = {frozenset(tiny.restrict_to_M(alg, t)) for t in tiny.classical_torsion_tiny(alg)}
    assert {n.members_set for n in enumerate_classes(alg).nodes} == classical


@given(st.sampled_from([(1, 2), (1, 2, 2), (1, 2, 2, 2)]), st.integers(min_value=2, max_value=3))
def test_minimal_containing_restricts_back(kupisch, d):
    alg = Algebra.from_kupisch(kupisch, d)
    if not alg.is_path_quiver() or len(tiny.tiny_model(alg).intervals) > 16:
        return
    for node in enumerate_classes(alg).nodes:
        t = tiny.minimal_containing(alg, node.members)
        assert tiny.restrict_to_M(alg, t) == list(node.members)
        assert tiny.check_induces(alg, t)
