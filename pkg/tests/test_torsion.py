from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from hnakayama import reps as R
from hnakayama.algebra import Algebra
from hnakayama.torsion import (
    brute_force_classes,
    check_axioms,
    closure,
    closure_system,
    enumerate_classes,
    is_split,
)

from .conftest import small_algebras

THREE, TWO_THREE, ONE_TWO, ONE = (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)


def test_row_two_class_satisfies_axioms(a12):
    assert check_axioms(a12, [TWO_THREE, ONE_TWO, ONE]) is None


def test_t1_violation_witness(a12):
    v = check_axioms(a12, [THREE, TWO_THREE])
    assert (v.axiom, v.x, v.z) == ("T1", TWO_THREE, ONE_TWO)


def test_empty_set_is_a_class(a12):
    assert check_axioms(a12, []) is None


def test_closure_examples(a12):
    assert closure(a12, [TWO_THREE]).members == (TWO_THREE, ONE_TWO, ONE)
    assert closure(a12, a12.indecs).members == tuple(a12.indecs)
    assert closure(a12, []).members == ()


def test_six_classes_of_a12(a12):
    found = {node.members_set for node in enumerate_classes(a12).nodes}
    expected = [(), (THREE,), (ONE,), (ONE_TWO, ONE), (TWO_THREE, ONE_TWO, ONE), tuple(a12.indecs)]
    assert found == {frozenset(e) for e in expected}


# counts frozen from exhaustive subset filtering
@pytest.mark.parametrize("kupisch, count", [((1, 2), 6), ((1, 2, 2), 16), ((1, 2, 3), 25)])
def test_class_counts(kupisch, count):
    alg = Algebra.from_kupisch(kupisch, 2)
    assert len(enumerate_classes(alg)) == count
    assert len(brute_force_classes(alg)) == count


def test_split_examples(a12):
    assert not is_split(a12, [THREE])
    assert is_split(a12, [ONE])
    assert is_split(a12, a12.indecs)


@given(small_algebras(max_indecs=10))
def test_next_closure_matches_brute_force(alg):
    lattice = enumerate_classes(alg)
    assert {n.members_set for n in lattice.nodes} == set(brute_force_classes(alg))


@given(small_algebras(max_length=5))
def test_lattice_laws(alg):
    cs = closure_system(alg)
    masks = [cs.mask(n.members) for n in enumerate_classes(alg).nodes]
    mset = set(masks)
    assert 0 in mset and cs.full in mset
    for a, b in itertools.product(masks, repeat=2):
        assert a & b in mset
    assert len(mset) == len(masks)


@given(small_algebras(max_length=5))
def test_closure_is_a_closure_operator(alg):
    for x in alg.indecs:
        c = closure(alg, [x])
        assert x in c
        assert check_axioms(alg, c.members) is None
        assert closure(alg, c.members).members == c.members


@given(small_algebras())
def test_split_criterion_matches_representations(alg):
    reps = {x: R.realize_module(alg, x) for x in alg.indecs}
    for node in enumerate_classes(alg).nodes:
        by_hom = not any(
            R.hom_dim(reps[u], reps[x]) for u in node.members for x in alg.indecs if x not in node
        )
        assert by_hom == is_split(alg, node.members)


def test_hasse_edges_are_covers(a12):
    lattice = enumerate_classes(a12)
    sizes = [len(n) for n in lattice.nodes]
    for i, j in lattice.edges:
        assert lattice.nodes[i].members_set < lattice.nodes[j].members_set
        between = [
            k for k in range(len(sizes))
            if lattice.nodes[i].members_set < lattice.nodes[k].members_set < lattice.nodes[j].members_set
        ]
        assert not between
