"""Classical torsion classes when the quiver of A_l^d is a single path.

Then A_l^d is a Nakayama algebra and every indecomposable module is uniserial.
A module is written as the tuple of its support vertices, from top to socle.
Torsion classes are the sets ``S`` with ``S = left-perp(right-perp(S))``; the
quotient and extension closure of every such set is cross-checked with explicit
representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from . import reps as R
from .algebra import Algebra, Tup
from .reps import QuiverRep
from .torsion import check_axioms

__all__ = [
    "InductionReport",
    "NotNakayama",
    "TinyModel",
    "check_induces",
    "classical_torsion_tiny",
    "induces_by_definition",
    "minimal_containing",
    "tiny_model",
]

Interval = tuple[Tup, ...]


class NotNakayama(ValueError):
    """The quiver of the algebra is not a single oriented path."""


class TinyModel:
    """Uniserial modules of a path algebra with relations, with their Hom data."""

    def __init__(self, alg: Algebra):
        if not alg.is_path_quiver():
            raise NotNakayama(f"quiver of l={list(alg.kupisch)} d={alg.d} branches")
        self.algebra = alg
        self.path = alg.path_order()
        pos = {v: i for i, v in enumerate(self.path)}
        vi = alg.vertex_index
        intervals: list[Interval] = []
        for j, top in enumerate(self.path):
            plen = R.projective_rep(alg, top).total_dim
            for k in range(1, plen + 1):
                intervals.append(tuple(self.path[j - i] for i in range(k)))
        self.intervals = sorted(intervals, key=lambda iv: (len(iv), pos[iv[0]]))
        self.index = {iv: i for i, iv in enumerate(self.intervals)}
        self.reps: list[QuiverRep] = [self._realize(iv) for iv in self.intervals]
        n = len(self.intervals)
        self.hom = [[R.hom_dim(self.reps[i], self.reps[j]) for j in range(n)] for i in range(n)]
        self._vi = vi

    def _realize(self, iv: Interval) -> QuiverRep:
        alg = self.algebra
        vi = alg.vertex_index
        support = {vi[v] for v in iv}
        dims = tuple(1 if v in support else 0 for v in range(len(alg.vertices)))
        mats = []
        for s, t in alg.arrow_index:
            rows, cols = dims[t], dims[s]
            mats.append(la.eye(1) if rows and cols else la.zeros(rows, cols))
        rep = QuiverRep(alg, dims, tuple(mats))
        if not R.is_module(rep):
            raise ArithmeticError(f"interval {iv} violates the relations")
        return rep

    @cached_property
    def module_intervals(self) -> dict[Tup, Interval]:
        """The uniserial module underlying each indecomposable of M."""
        out = {}
        for x in self.algebra.indecs:
            support = set(self.algebra.support(x))
            matches = [iv for iv in self.intervals if set(iv) == support]
            if len(matches) != 1:
                raise ArithmeticError(f"{x} is not an interval module")
            out[x] = matches[0]
        return out

    def mask(self, ivs: Iterable[Interval]) -> int:
        m = 0
        for iv in ivs:
            m |= 1 << self.index[tuple(iv)]
        return m

    def members(self, mask: int) -> list[Interval]:
        return [iv for i, iv in enumerate(self.intervals) if mask >> i & 1]

    def right_perp(self, mask: int) -> int:
        n = len(self.intervals)
        out = 0
        for j in range(n):
            if all(not self.hom[i][j] for i in range(n) if mask >> i & 1):
                out |= 1 << j
        return out

    def left_perp(self, mask: int) -> int:
        n = len(self.intervals)
        out = 0
        for i in range(n):
            if all(not self.hom[i][j] for j in range(n) if mask >> j & 1):
                out |= 1 << i
        return out

    def torsion_closure(self, mask: int) -> int:
        return self.left_perp(self.right_perp(mask))

    def is_quotient_closed(self, mask: int) -> bool:
        """Every interval that is a quotient of a sum of members is a member."""
        srcs = [self.reps[i] for i in range(len(self.intervals)) if mask >> i & 1]
        for j, target in enumerate(self.reps):
            if mask >> j & 1 or not srcs:
                continue
            image = R.trace_submodule(srcs, target).image
            if image.dims == target.dims:
                return False
        return True

    def extension_middles(self, z: int, x: int) -> list[list[Interval]]:
        """Middle terms of the extensions ``0 -> X -> E -> Z -> 0`` built from
        maps ``Omega Z -> X`` through pushouts along the projective cover of ``Z``."""
        cover = R.projective_cover(self.reps[z])
        fac = R.factorize(cover.epi)
        syz = fac.kernel
        if syz.is_zero():
            return []
        out = []
        for phi in R.hom_basis(syz, self.reps[x]):
            # E = coker(Omega Z -> P + X, (inclusion, -phi))
            both = R.direct_sum([cover.module, self.reps[x]])
            into = R.map_into_sum(syz, [fac.kernel_inclusion, phi.scale(-1)], both)
            middle = R.factorize(into).cokernel
            dec = R.decompose(middle, {iv: self.reps[self.index[iv]] for iv in self.intervals})
            out.append(sorted(dec.multiplicities, key=lambda iv: self.index[iv]))
        return out

    def is_extension_closed(self, mask: int) -> bool:
        idx = [i for i in range(len(self.intervals)) if mask >> i & 1]
        for z in idx:
            for x in idx:
                for middle in self.extension_middles(z, x):
                    if any(not mask >> self.index[iv] & 1 for iv in middle):
                        return False
        return True


def tiny_model(alg: Algebra) -> TinyModel:
    cache = alg._cache
    if "tiny_model" not in cache:
        cache["tiny_model"] = TinyModel(alg)
    return cache["tiny_model"]


def classical_torsion_tiny(alg: Algebra, limit: int = 16) -> list[tuple[Interval, ...]]:
    """All torsion classes of mod A, as sets of uniserial modules."""
    model = tiny_model(alg)
    n = len(model.intervals)
    if n > limit:
        raise ValueError(f"{n} uniserial modules exceed the search limit {limit}")
    found = {model.torsion_closure(m) for m in range(1 << n)}
    ordered = sorted(found, key=lambda m: (bin(m).count("1"), m))
    return [tuple(model.members(m)) for m in ordered]


def minimal_containing(alg: Algebra, members: Iterable[Sequence[int]]) -> tuple[Interval, ...]:
    """The smallest torsion class of mod A containing the given indecomposables of M."""
    model = tiny_model(alg)
    ivs = [model.module_intervals[tuple(x)] for x in members]
    return tuple(model.members(model.torsion_closure(model.mask(ivs))))


def restrict_to_M(alg: Algebra, torsion_class: Iterable[Interval]) -> list[Tup]:
    model = tiny_model(alg)
    tset = {tuple(iv) for iv in torsion_class}
    return [x for x in alg.indecs if model.module_intervals[x] in tset]


@dataclass(frozen=True)
class InductionReport:
    induces: bool
    reason: str | None = None
    module: Tup | None = None
    other: Tup | None = None

    def __bool__(self) -> bool:
        return self.induces


def _torsion_parts(model: TinyModel, tmask: int, x: Tup) -> R.Factorization:
    srcs = [model.reps[i] for i in range(len(model.intervals)) if tmask >> i & 1]
    target = model.reps[model.index[model.module_intervals[x]]]
    if not srcs:
        z = R.zero_rep(model.algebra)
        return R.factorize(R.zero_map(z, target))
    return R.trace_submodule(srcs, target)


def check_induces(alg: Algebra, torsion_class: Iterable[Interval]) -> InductionReport:
    """Homological test: ``tM`` lies in M and ``Ext^{d-1}(tM, fM') = 0`` for all ``M, M'``.

    ``tM`` is the trace of the torsion class in ``M``; ``fM`` is ``M / tM``.
    """
    model = tiny_model(alg)
    tmask = model.mask(torsion_class)
    candidates = {x: model.reps[model.index[model.module_intervals[x]]] for x in alg.indecs}
    torsion = {}
    free = {}
    for x in alg.indecs:
        fac = _torsion_parts(model, tmask, x)
        t = fac.image
        if not t.is_zero():
            try:
                R.decompose(t, candidates)
            except R.DecompositionError:
                return InductionReport(False, "torsion part outside M", x)
        torsion[x] = t
        free[x] = fac.cokernel
    for x in alg.indecs:
        if torsion[x].is_zero():
            continue
        res = R.minimal_proj_resolution(torsion[x], alg.d)
        for y in alg.indecs:
            if free[y].is_zero():
                continue
            if R.ext_dim(torsion[x], free[y], alg.d - 1, res):
                return InductionReport(False, "Ext does not vanish", x, y)
    return InductionReport(True)


def induces_by_definition(alg: Algebra, torsion_class: Iterable[Interval]) -> InductionReport:
    """Direct test: ``T cap M`` satisfies the d-torsion axioms and the trace of
    ``T`` in each ``M`` equals the trace of ``T cap M``."""
    model = tiny_model(alg)
    tset = [tuple(iv) for iv in torsion_class]
    tmask = model.mask(tset)
    inside = restrict_to_M(alg, tset)
    if check_axioms(alg, inside) is not None:
        return InductionReport(False, "intersection is not a d-torsion class")
    umask = model.mask(model.module_intervals[x] for x in inside)
    for x in alg.indecs:
        t = _torsion_parts(model, tmask, x).image
        u = _torsion_parts(model, umask, x).image
        if t.dims != u.dims:
            return InductionReport(False, "torsion subobjects differ", x)
    return InductionReport(True)
