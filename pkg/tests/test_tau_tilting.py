from __future__ import annotations

import pytest
from hypothesis import given

from hnakayama import reps as R
from hnakayama import tau_tilting as T
from hnakayama import tiny
from hnakayama.algebra import Algebra
from hnakayama.torsion import DTorsionClass, closure, enumerate_classes

from .conftest import small_algebras

THREE, TWO_THREE, ONE_TWO, ONE = (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)
ROW2 = [TWO_THREE, ONE_TWO, ONE]
BRANCHED_SLICE = [(2, 2, 2), (1, 1, 2), (1, 2, 2), (2, 2, 3), (2, 3, 3), (0, 0, 2), (0, 1, 2), (0, 2, 2), (2, 2, 4), (2, 3, 4), (2, 4, 4)]
PATH_SLICE = [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 1, 2), (1, 2, 2)]


def test_i1_i2_row_three(a12):
    assert T.ext_d_projective_set(a12, [ONE_TWO, ONE]) == [ONE_TWO, ONE]
    assert T.support_projective_set(a12, [ONE_TWO, ONE]) == [THREE]


def test_i1_i2_row_four(a12):
    assert T.ext_d_projective_set(a12, [ONE]) == [ONE]
    assert T.support_projective_set(a12, [ONE]) == [THREE, TWO_THREE]


def test_i1_i2_of_empty_class(a12):
    assert T.ext_d_projective_set(a12, []) == []
    assert T.support_projective_set(a12, []) == a12.projectives


@pytest.mark.parametrize(
    "members, module_part, proj_part",
    [
        (ROW2, ROW2, []),
        ([THREE, TWO_THREE, ONE_TWO, ONE], [THREE, TWO_THREE, ONE_TWO], []),
        ([THREE], [THREE], [TWO_THREE, ONE_TWO]),
    ],
)
def test_pair_of_table_rows(a12, members, module_part, proj_part):
    pair = T.pair_of(DTorsionClass(a12, tuple(members)))
    assert list(pair.module_part) == module_part
    assert list(pair.proj_part) == proj_part


def test_rigid_pair_examples(a12):
    assert T.is_rigid_pair(a12, [THREE, TWO_THREE], [ONE_TWO])
    assert not T.is_rigid_pair(a12, a12.indecs, [])
    assert T.is_rigid_pair(a12, [], a12.projectives)


def test_maximal_pair_examples(a12):
    assert T.is_maximal_pair(a12, [THREE, TWO_THREE], [ONE_TWO])
    cert = T.is_maximal_pair(a12, [THREE, TWO_THREE], [])
    assert (cert.maximal, cert.condition, cert.witness) == (False, "ii", ONE_TWO)


def test_non_maximal_pair_outside_image(a12):
    pairs = [T.pair_of(n) for n in enumerate_classes(a12).nodes]
    assert all((list(p.module_part), list(p.proj_part)) != ([THREE, TWO_THREE], [ONE_TWO]) for p in pairs)


def test_coresolution_of_regular_module(a12):
    cores = T.coresolve_regular(DTorsionClass(a12, tuple(ROW2)))
    assert [dict(t) for t in cores.targets] == [{TWO_THREE: 2, ONE_TWO: 1}, {ONE_TWO: 1}, {ONE: 1}]
    assert cores.kernel.is_zero()


def test_coresolution_of_support_tilting_module(a12):
    model = tiny.tiny_model(a12)
    simple_two = model.reps[model.index[((0, 1),)]]
    module = R.direct_sum([R.realize_module(a12, TWO_THREE), simple_two, R.realize_module(a12, ONE_TWO)])
    cores = T.coresolve(a12, module, ROW2)
    assert [dict(t) for t in cores.targets] == [{TWO_THREE: 1, ONE_TWO: 2}, {ONE: 1}]
    assert cores.kernel.is_zero()


def test_coresolution_of_member_is_identity(a12):
    cores = T.coresolve(a12, R.realize_module(a12, ONE_TWO), ROW2)
    assert [dict(t) for t in cores.targets] == [{ONE_TWO: 1}]


def test_fac_examples(a12):
    assert T.fac_intersect(a12, [THREE, TWO_THREE]) == [THREE, TWO_THREE]
    assert T.fac_intersect(a12, a12.projectives) == a12.indecs


def test_weak_apr(a12):
    assert T.weak_d_APR(a12, THREE) == ROW2
    assert T.fac_intersect(a12, T.weak_d_APR(a12, THREE)) == ROW2


def test_weak_apr_needs_non_injective():
    with pytest.raises(T.IsInjective):
        T.weak_d_APR(Algebra.from_kupisch((1,), 2), (0, 0, 0))


def test_weak_apr_needs_simple_projective(a12):
    with pytest.raises(T.NotSimpleProjective):
        T.weak_d_APR(a12, TWO_THREE)


def test_branched_slice(branched_slice_algebra):
    assert T.is_slice(branched_slice_algebra, BRANCHED_SLICE)
    assert T.slice_certificate(branched_slice_algebra, BRANCHED_SLICE).tilting_consequences


def test_five_element_slice(path_slice_algebra):
    assert T.enumerate_slices(path_slice_algebra) == [tuple(PATH_SLICE)]
    assert T.slice_certificate(path_slice_algebra, PATH_SLICE).tilting_consequences


def test_slice_with_translate_pair_is_rejected(branched_slice_algebra):
    x = (2, 2, 2)
    assert not T.is_slice(branched_slice_algebra, BRANCHED_SLICE + [branched_slice_algebra.tau(x)])


@given(small_algebras())
def test_pairs_satisfy_count_law_and_coresolution_oracle(alg):
    for node in enumerate_classes(alg).nodes:
        pair = T.pair_of(node)
        assert pair.size == len(alg.vertices)
        assert T.coresolve_regular(node).summands() == list(pair.module_part)
        assert T.is_maximal_pair(alg, pair.module_part, pair.proj_part)
        assert T.fac_intersect(alg, pair.module_part) == list(node.members)


@given(small_algebras(max_d=2))
def test_module_part_is_ext_projective(alg):
    reps = {x: R.realize_module(alg, x) for x in alg.indecs}
    for node in enumerate_classes(alg).nodes:
        for u in T.pair_of(node).module_part:
            res = R.minimal_proj_resolution(reps[u], alg.d + 1)
            for v in node.members:
                assert R.ext_dim(reps[u], reps[v], alg.d, res) == 0


@given(small_algebras())
def test_apr_matches_closure_pair(alg):
    for p in alg.projectives:
        if R.realize_module(alg, p).total_dim != 1 or alg.is_injective(p):
            continue
        apr = T.weak_d_APR(alg, p)
        cls = closure(alg, T.fac_intersect(alg, apr))
        assert list(T.pair_of(cls).module_part) == apr


@given(small_algebras())
def test_every_enumerated_slice_passes(alg):
    for s in T.enumerate_slices(alg):
        assert T.slice_certificate(alg, s).tilting_consequences
