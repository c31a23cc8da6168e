from __future__ import annotations

import itertools

from hypothesis import given

from hnakayama import reps as R
from hnakayama.algebra import leads_to
from hnakayama.tau_tilting import regular_rep

from .conftest import small_algebras

THREE, TWO_THREE, ONE_TWO, ONE = (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)


def _rep(alg, x):
    return R.realize_module(alg, x)


def test_realize_one_over_two(a12):
    rep = _rep(a12, ONE_TWO)
    assert rep.dim_vector() == {(0, 1): 1, (1, 1): 1}
    assert rep.total_dim == 2


def test_realize_simple_three(a12):
    rep = _rep(a12, THREE)
    assert rep.dim_vector() == {(0, 0): 1}


@given(small_algebras())
def test_total_dimension_is_support_size(alg):
    for x in alg.indecs:
        assert _rep(alg, x).total_dim == len(alg.support(x))
        assert R.is_module(_rep(alg, x))


def test_hom_examples(a12):
    assert R.hom_dim(_rep(a12, TWO_THREE), _rep(a12, ONE_TWO)) == 1
    assert R.hom_dim(_rep(a12, THREE), _rep(a12, ONE_TWO)) == 0
    for x in a12.indecs:
        assert R.hom_dim(_rep(a12, x), _rep(a12, x)) == 1


def test_factorize_identity_and_zero(a12):
    m, n = _rep(a12, TWO_THREE), _rep(a12, ONE_TWO)
    fac = R.factorize(R.identity(m))
    assert fac.kernel.is_zero() and fac.cokernel.is_zero()
    fac = R.factorize(R.zero_map(m, n))
    assert fac.kernel.dims == m.dims and fac.cokernel.dims == n.dims


def test_factorize_two_three_to_one_two(a12):
    f = R.hom_basis(_rep(a12, TWO_THREE), _rep(a12, ONE_TWO))[0]
    fac = R.factorize(f)
    assert fac.kernel.dims == _rep(a12, THREE).dims
    assert fac.image.dims == R.simple_rep(a12, (0, 1)).dims
    assert fac.cokernel.dims == _rep(a12, ONE).dims


def test_approximation_of_regular_module(a12):
    gens = [_rep(a12, x) for x in (TWO_THREE, ONE_TWO, ONE)]
    approx = R.minimal_left_approximation(regular_rep(a12), gens, keys=[TWO_THREE, ONE_TWO, ONE])
    assert approx.multiplicities == (2, 1, 0)


def test_approximation_with_no_maps(a12):
    approx = R.minimal_left_approximation(_rep(a12, THREE), [_rep(a12, ONE)])
    assert approx.morphism is None


@given(small_algebras())
def test_approximation_of_a_generator_is_split(alg):
    gens = [_rep(alg, x) for x in alg.indecs]
    for i, x in enumerate(alg.indecs):
        approx = R.minimal_left_approximation(gens[i], gens, keys=list(alg.indecs))
        assert approx.multiplicities[i] == 1 and sum(approx.multiplicities) == 1
        assert R.factorize(approx.morphism).cokernel.is_zero()


def test_resolution_of_projective_has_length_zero(a12):
    res = R.minimal_proj_resolution(_rep(a12, ONE_TWO), 2)
    assert len(res.terms) == 1 and res.multiplicities(0) == {(1, 1): 1}


def test_resolution_of_simple_one(a12):
    res = R.minimal_proj_resolution(_rep(a12, ONE), 2)
    assert [res.multiplicities(i) for i in range(3)] == [{(1, 1): 1}, {(0, 1): 1}, {(0, 0): 1}]


def test_syzygy_of_simple_top_is_radical(a12):
    p = R.projective_rep(a12, (1, 1))
    top = a12.vertex_index[(1, 1)]
    res = R.minimal_proj_resolution(R.simple_rep(a12, (1, 1)), 1)
    syzygy = R.factorize(res.augmentation).kernel
    assert syzygy.dims == tuple(p.dims[v] - (v == top) for v in range(3))


def test_ext_examples(a12):
    reps = {x: _rep(a12, x) for x in a12.indecs}
    for x, y in itertools.product(a12.indecs, repeat=2):
        assert R.ext_dim(reps[x], reps[y], 1) == 0
        assert R.ext_dim(reps[x], reps[y], 0) == R.hom_dim(reps[x], reps[y])
    assert R.ext_dim(reps[ONE], reps[THREE], 2) == 1


@given(small_algebras(max_d=2))
def test_higher_ar_duality(alg):
    reps = {x: _rep(alg, x) for x in alg.indecs}
    for x in alg.indecs:
        res = R.minimal_proj_resolution(reps[x], alg.d + 1)
        for y in alg.indecs:
            assert R.ext_dim(reps[x], reps[y], alg.d, res) == alg.ext_d_dim(x, y)
            for i in range(1, alg.d):
                assert R.ext_dim(reps[x], reps[y], i, res) == 0


@given(small_algebras())
def test_composites_along_leads_to(alg):
    reps = {x: _rep(alg, x) for x in alg.indecs}
    for x, y, z in itertools.product(alg.indecs, repeat=3):
        if leads_to(x, y) and leads_to(y, z):
            f = R.hom_basis(reps[x], reps[y])[0]
            g = R.hom_basis(reps[y], reps[z])[0]
            assert R.compose(g, f).is_zero() != leads_to(x, z)


@given(small_algebras())
def test_factorization_dimensions(alg):
    reps = {x: _rep(alg, x) for x in alg.indecs}
    for x, y in itertools.product(alg.indecs, repeat=2):
        for f in R.hom_basis(reps[x], reps[y]):
            fac = R.factorize(f)
            for v in range(len(alg.vertices)):
                assert fac.kernel.dims[v] + fac.image.dims[v] == reps[x].dims[v]
                assert fac.image.dims[v] + fac.cokernel.dims[v] == reps[y].dims[v]


def test_decompose_regular_module(a12):
    cands = {x: _rep(a12, x) for x in a12.indecs}
    dec = R.decompose(regular_rep(a12), cands)
    assert dec.multiplicities == {THREE: 1, TWO_THREE: 1, ONE_TWO: 1}
