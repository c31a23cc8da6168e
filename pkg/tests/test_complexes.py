from __future__ import annotations

import itertools

from hypothesis import given

from hnakayama import complexes as C
from hnakayama import reps as R
from hnakayama import tau_tilting as T
from hnakayama.algebra import Algebra
from hnakayama.torsion import enumerate_classes

from .conftest import small_algebras

THREE, TWO_THREE, ONE_TWO, ONE = (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)


def _ms(cx):
    return [list(cx.multisets()[deg]) for deg in sorted(cx.multisets())]


def test_presentation_of_simple_one(a12):
    cx = C.min_presentation(a12, ONE)
    assert _ms(cx) == [[(0, 0)], [(0, 1)], [(1, 1)]]
    assert cx.is_complex() and cx.is_minimal()


def test_presentation_of_projective_is_stalk(a12):
    assert _ms(C.min_presentation(a12, ONE_TWO)) == [[], [], [(1, 1)]]


def test_presentation_of_2_2_2():
    alg = Algebra.from_kupisch((1, 2, 3), 2)
    assert _ms(C.min_presentation(alg, (2, 2, 2))) == [[(1, 1)], [(1, 2)], [(2, 2)]]


def _assembled(alg, module_part, proj_part):
    return C.assemble(alg, module_part, proj_part).total


def test_assembled_rows(a12):
    assert _ms(_assembled(a12, [ONE_TWO, ONE], [THREE])) == [[(0, 0), (0, 0)], [(0, 1)], [(1, 1), (1, 1)]]
    assert _ms(_assembled(a12, [ONE], [THREE, TWO_THREE])) == [[(0, 0), (0, 0), (0, 1)], [(0, 1)], [(1, 1)]]
    assert _ms(_assembled(a12, [], a12.projectives)) == [[(0, 0), (0, 1), (1, 1)], [], []]


def test_stalks_in_distinct_degrees(a12):
    a = C.stalk(a12, list(range(3)), 0)
    for i in range(1, 5):
        assert C.hom_K(a, a, i).dimension == 0


def test_shifted_projective_against_presentations(a12):
    for v, y in enumerate(a12.vertices):
        p = C.stalk(a12, [v], -a12.d)
        proj = R.projective_rep(a12, y)
        for x in a12.indecs:
            expected = R.hom_dim(proj, R.realize_module(a12, x))
            assert C.hom_K(p, C.min_presentation(a12, x), a12.d).dimension == expected


def test_assembled_complexes_of_a12_are_silting(a12):
    for node in enumerate_classes(a12).nodes:
        pair = T.pair_of(node)
        total = _assembled(a12, pair.module_part, pair.proj_part)
        assert C.is_presilting(total)
        assert all(C.hom_K(total, total, i).dimension == 0 for i in range(1, a12.d + 1))
        cert = C.is_silting(a12, node.members, pair.module_part, pair.proj_part)
        assert cert.silting and cert.count_matches


def test_full_class_witness_is_one_step(a12):
    full = enumerate_classes(a12).nodes[-1]
    pair = T.pair_of(full)
    cert = C.is_silting(a12, full.members, pair.module_part, pair.proj_part)
    assert len(cert.witness) == 1
    assert cert.witness.terms() == [{("pres", x): 1 for x in a12.projectives}]


def _non_image_summands(alg):
    vi = alg.vertex_index
    return [
        ("P(1,1)[2]", C.stalk(alg, [vi[(1, 1)]], -2)),
        ("P(0,0)", C.stalk(alg, [vi[(0, 0)]], 0)),
        ("P(0,1)", C.stalk(alg, [vi[(0, 1)]], 0)),
    ]


def test_silting_complex_outside_image(a12):
    parts = _non_image_summands(a12)
    total = C.direct_sum([p for _, p in parts], a12).total
    cert = C.silting_certificate_for_summands(a12, parts)
    assert cert.presilting and cert.silting and cert.count_matches
    assert C.in_P_d_M(total)
    images = []
    for node in enumerate_classes(a12).nodes:
        pair = T.pair_of(node)
        images.append(_assembled(a12, pair.module_part, pair.proj_part).multisets())
    assert total.multisets() not in images


def test_contractible_lies_in_P_d_M(a12):
    cx = C.contractible(a12, 1, -1)
    assert C.is_inner_acyclic(cx)
    assert C.h0(cx).is_zero()
    assert C.in_P_d_M(cx)


@given(small_algebras(max_length=4, max_d=3, max_indecs=12))
def test_presentations_match_resolutions(alg):
    cands = {x: R.realize_module(alg, x) for x in alg.indecs}
    for x in alg.indecs:
        cx = C.min_presentation(alg, x)
        assert cx.is_complex() and cx.is_minimal() and C.in_P_d_M(cx)
        res = R.minimal_proj_resolution(cands[x], alg.d)
        for i in range(alg.d + 1):
            got = sorted(alg.vertices[v] for v in res.labels[i]) if i < len(res.labels) else []
            assert list(cx.multisets()[-i]) == got
        assert R.decompose(C.h0(cx), cands).multiplicities == {x: 1}


@given(small_algebras(max_length=3, max_d=3, max_indecs=10))
def test_homotopy_hom_matches_ext(alg):
    pres = {x: C.min_presentation(alg, x) for x in alg.indecs}
    reps = {x: R.realize_module(alg, x) for x in alg.indecs}
    for x, y in itertools.product(alg.indecs, repeat=2):
        res = R.minimal_proj_resolution(reps[x], alg.d)
        assert C.hom_K(pres[x], pres[y]).dimension == R.hom_dim(reps[x], reps[y])
        for i in range(1, alg.d):
            assert C.hom_K(pres[x], pres[y], i).dimension == R.ext_dim(reps[x], reps[y], i, res)


@given(small_algebras(max_length=3, max_d=3, max_indecs=10))
def test_assembled_complexes_are_silting(alg):
    for node in enumerate_classes(alg).nodes:
        pair = T.pair_of(node)
        total = _assembled(alg, pair.module_part, pair.proj_part)
        assert total.is_complex() and C.in_P_d_M(total)
        cert = C.is_silting(alg, node.members, pair.module_part, pair.proj_part)
        assert cert.silting and cert.count_matches
        assert len(cert.witness) <= alg.d + 1
