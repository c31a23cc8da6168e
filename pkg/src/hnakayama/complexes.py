"""(d+1)-term complexes of projectives, Hom in the homotopy category, and the
generation witness certifying that a presilting complex is silting.

Maps between direct sums of indecomposable projectives are stored as sparse
scalar matrices over the standard basis morphisms ``P_a -> P_b``.  The structure
constants for composing these basis morphisms are read off from explicit
representation matrices supplied by :mod:`hnakayama.reps`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from . import linalg as la
from . import reps as R
from .algebra import Algebra, Tup
from .reps import QuiverRep, RepMap

__all__ = [
    "ChainMap",
    "ComplexCategory",
    "NotAnInflation",
    "PMap",
    "ProjComplex",
    "ProjectiveCalculus",
    "SiltingCertificate",
    "WitnessNotFound",
    "assemble",
    "calculus",
    "chain_map_basis",
    "contractible",
    "direct_sum",
    "h0",
    "hom_K",
    "homology_dims",
    "in_P_d_M",
    "is_inner_acyclic",
    "is_presilting",
    "is_silting",
    "min_presentation",
    "presentation_vertices",
    "silting_witness",
    "stalk",
]


class WitnessNotFound(RuntimeError):
    """The iterated approximations did not produce a generation witness."""


class NotAnInflation(WitnessNotFound):
    """An approximation was not a degreewise split monomorphism."""


class ProjectiveCalculus:
    """Basis morphisms between indecomposable projectives and their composition constants."""

    def __init__(self, alg: Algebra):
        self.algebra = alg
        nv = len(alg.vertices)
        self.projectives = [R.projective_rep(alg, v) for v in alg.vertices]
        self.basis: dict[tuple[int, int], RepMap] = {}
        for a in range(nv):
            for b in range(nv):
                hb = R.hom_basis(self.projectives[a], self.projectives[b])
                if len(hb) > 1:
                    raise ArithmeticError("Hom between indecomposable projectives exceeds dimension one")
                if hb:
                    g = hb[0]
                    scale = g.comps[a][0, 0].element
                    self.basis[(a, b)] = g.scale(1 / scale)
        self._kappa: dict[tuple[int, int, int], object] = {}

    def allowed(self, a: int, b: int) -> bool:
        return (a, b) in self.basis

    def kappa(self, a: int, b: int, c: int):
        """Scalar ``k`` with ``(b -> c) o (a -> b) = k (a -> c)``."""
        key = (a, b, c)
        if key in self._kappa:
            return self._kappa[key]
        if not (self.allowed(a, b) and self.allowed(b, c) and self.allowed(a, c)):
            val = la.QQ(0)
        else:
            comp = self.basis[(b, c)].comps[a]
            val = comp[0, 0].element if comp.shape == (1, 1) else la.QQ(0)
        self._kappa[key] = val
        return val

    def realize_term(self, labels: Sequence[int]) -> QuiverRep:
        if not labels:
            return R.zero_rep(self.algebra)
        return R.direct_sum([self.projectives[v] for v in labels])

    def realize(self, f: "PMap", source: QuiverRep | None = None, target: QuiverRep | None = None) -> RepMap:
        src = source or self.realize_term(f.source)
        tgt = target or self.realize_term(f.target)
        nv = len(self.algebra.vertices)
        comps = []
        for w in range(nv):
            srow = [i for i, a in enumerate(f.source) if self.projectives[a].dims[w]]
            trow = [j for j, b in enumerate(f.target) if self.projectives[b].dims[w]]
            spos = {i: k for k, i in enumerate(srow)}
            tpos = {j: k for k, j in enumerate(trow)}
            entries = {}
            for (j, i), c in f.entries.items():
                if i in spos and j in tpos:
                    comp = self.basis[(f.source[i], f.target[j])].comps[w]
                    val = comp[0, 0].element if comp.shape == (1, 1) else 0
                    if val:
                        entries[(tpos[j], spos[i])] = c * val
            comps.append(la.sparse(entries, len(trow), len(srow)).to_dense())
        return RepMap(src, tgt, tuple(comps))


def calculus(alg: Algebra) -> ProjectiveCalculus:
    cache = alg._cache
    if "calculus" not in cache:
        cache["calculus"] = ProjectiveCalculus(alg)
    return cache["calculus"]


@dataclass(frozen=True, eq=False)
class PMap:
    """A map ``sum P_{source[i]} -> sum P_{target[j]}``; ``entries[(j, i)]`` scales the basis morphism."""

    calc: ProjectiveCalculus
    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: dict = field(default_factory=dict)

    def positions(self) -> list[tuple[int, int]]:
        return [
            (j, i)
            for j, b in enumerate(self.target)
            for i, a in enumerate(self.source)
            if self.calc.allowed(a, b)
        ]

    def flatten(self) -> list:
        return [self.entries.get(p, 0) for p in self.positions()]

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def __add__(self, other: "PMap") -> "PMap":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return PMap(self.calc, self.source, self.target, {k: v for k, v in out.items() if v})

    def scale(self, c) -> "PMap":
        c = la.QQ(c)
        if not c:
            return PMap(self.calc, self.source, self.target, {})
        return PMap(self.calc, self.source, self.target, {k: v * c for k, v in self.entries.items()})

    def is_radical(self) -> bool:
        """No entry between summands at the same vertex, i.e. no split component."""
        return all(not v or self.source[i] != self.target[j] for (j, i), v in self.entries.items())


def pcompose(g: PMap, f: PMap) -> PMap:
    """``g o f``."""
    calc = f.calc
    by_mid: dict[int, list[tuple[int, object]]] = {}
    for (j, i), v in f.entries.items():
        by_mid.setdefault(j, []).append((i, v))
    out: dict[tuple[int, int], object] = {}
    for (k, j), w in g.entries.items():
        for i, v in by_mid.get(j, ()):
            kap = calc.kappa(f.source[i], f.target[j], g.target[k])
            if kap:
                out[(k, i)] = out.get((k, i), 0) + w * v * kap
    return PMap(calc, f.source, g.target, {k: v for k, v in out.items() if v})


def pidentity(calc: ProjectiveCalculus, labels: Sequence[int]) -> PMap:
    labels = tuple(labels)
    return PMap(calc, labels, labels, {(i, i): la.QQ(1) for i in range(len(labels))})


@dataclass(frozen=True, eq=False)
class ProjComplex:
    """A complex ``X_{-d} -> ... -> X_0``; ``terms[p]`` sits in degree ``p - d``."""

    algebra: Algebra
    terms: tuple[tuple[int, ...], ...]
    diffs: tuple[PMap, ...]

    def __post_init__(self) -> None:
        d = self.algebra.d
        if len(self.terms) != d + 1 or len(self.diffs) != d:
            raise ValueError("a (d+1)-term complex needs d+1 terms and d differentials")
        for p, f in enumerate(self.diffs):
            if f.source != self.terms[p] or f.target != self.terms[p + 1]:
                raise ValueError("differential does not match the terms")

    @property
    def calc(self) -> ProjectiveCalculus:
        return calculus(self.algebra)

    def term(self, degree: int) -> tuple[int, ...]:
        return self.terms[degree + self.algebra.d]

    def is_complex(self) -> bool:
        return all(pcompose(self.diffs[p + 1], self.diffs[p]).is_zero() for p in range(len(self.diffs) - 1))

    def is_zero(self) -> bool:
        return not any(self.terms)

    def summand_count(self) -> int:
        return sum(len(t) for t in self.terms)

    def multisets(self) -> dict[int, tuple[Tup, ...]]:
        """Sorted projective tops per degree, keyed by degree ``-d..0``."""
        verts = self.algebra.vertices
        d = self.algebra.d
        return {p - d: tuple(sorted(verts[v] for v in t)) for p, t in enumerate(self.terms)}

    def is_minimal(self) -> bool:
        return all(f.is_radical() for f in self.diffs)

    def to_json(self) -> dict:
        verts = self.algebra.vertices
        d = self.algebra.d
        return {
            "degrees": {str(p - d): [list(verts[v]) for v in t] for p, t in enumerate(self.terms)},
            "diff": {
                str(p - d): [[str(f.entries.get((j, i), 0)) for i in range(len(f.source))] for j in range(len(f.target))]
                for p, f in enumerate(self.diffs)
            },
        }


def _complex(alg: Algebra, terms: Sequence[Sequence[int]], diffs: Sequence[PMap] | None = None) -> ProjComplex:
    calc = calculus(alg)
    terms = tuple(tuple(t) for t in terms)
    if diffs is None:
        diffs = [PMap(calc, terms[p], terms[p + 1], {}) for p in range(alg.d)]
    return ProjComplex(alg, terms, tuple(diffs))


def stalk(alg: Algebra, labels: Sequence[int], degree: int = 0) -> ProjComplex:
    """Projectives ``P_v`` (vertex indices) concentrated in ``degree``."""
    terms: list[tuple[int, ...]] = [()] * (alg.d + 1)
    terms[degree + alg.d] = tuple(labels)
    return _complex(alg, terms)


def contractible(alg: Algebra, v: int, degree: int) -> ProjComplex:
    """``D_i(P_v)``: ``P_v -> P_v`` by the identity in degrees ``i`` and ``i + 1``."""
    d = alg.d
    if not -d <= degree <= -1:
        raise ValueError("contractible complexes live in degrees -d..0")
    calc = calculus(alg)
    terms: list[tuple[int, ...]] = [()] * (d + 1)
    p = degree + d
    terms[p] = (v,)
    terms[p + 1] = (v,)
    diffs = [PMap(calc, terms[q], terms[q + 1], {}) for q in range(d)]
    diffs[p] = pidentity(calc, (v,))
    return ProjComplex(alg, tuple(terms), tuple(diffs))


def presentation_vertices(alg: Algebra, x: Sequence[int]) -> list[Tup]:
    """``y^0, ..., y^d`` with ``y^i_j = x_{j-1} - 1`` for ``j <= i`` and ``x_j`` otherwise."""
    d = alg.d
    return [
        tuple(x[j - 1] - 1 if j <= i else x[j] for j in range(1, d + 1))
        for i in range(d + 1)
    ]


def min_presentation(alg: Algebra, x: Sequence[int]) -> ProjComplex:
    """Minimal projective d-presentation ``P_{y^d} -> ... -> P_{y^0}`` of ``M_x``."""
    x = tuple(x)
    if not alg.is_indec(x):
        raise ValueError(f"{x} is not an indecomposable of M")
    calc = calculus(alg)
    vi = alg.vertex_index
    d = alg.d
    if alg.is_projective(x):
        return stalk(alg, [vi[alg.top(x)]], 0)
    ys = presentation_vertices(alg, x)
    labels = [vi[y] for y in ys]
    terms = [(labels[d - p],) for p in range(d + 1)]
    diffs = []
    for p in range(d):
        a, b = terms[p][0], terms[p + 1][0]
        if not calc.allowed(a, b):
            raise ArithmeticError(f"no map between consecutive presentation terms of {x}")
        diffs.append(PMap(calc, terms[p], terms[p + 1], {(0, 0): la.QQ(1)}))
    cx = ProjComplex(alg, tuple(terms), tuple(diffs))
    if not cx.is_complex():
        raise ArithmeticError(f"presentation of {x} is not a complex")
    return cx


@dataclass(frozen=True, eq=False)
class SumComplex:
    """A direct sum with the positions of each summand's terms inside the total."""

    total: ProjComplex
    summands: tuple[ProjComplex, ...]
    offsets: tuple[tuple[int, ...], ...]


def direct_sum(parts: Sequence[ProjComplex], alg: Algebra | None = None) -> SumComplex:
    if not parts and alg is None:
        raise ValueError("empty direct sum needs the algebra")
    alg = alg or parts[0].algebra
    calc = calculus(alg)
    d = alg.d
    terms = []
    offsets = []
    for p in range(d + 1):
        acc = 0
        row = []
        labels: list[int] = []
        for part in parts:
            row.append(acc)
            labels.extend(part.terms[p])
            acc += len(part.terms[p])
        offsets.append(tuple(row))
        terms.append(tuple(labels))
    diffs = []
    for p in range(d):
        entries = {}
        for k, part in enumerate(parts):
            so, to = offsets[p][k], offsets[p + 1][k]
            for (j, i), v in part.diffs[p].entries.items():
                entries[(to + j, so + i)] = v
        diffs.append(PMap(calc, terms[p], terms[p + 1], entries))
    total = ProjComplex(alg, tuple(terms), tuple(diffs))
    per_part = tuple(tuple(offsets[p][k] for p in range(d + 1)) for k in range(len(parts)))
    return SumComplex(total, tuple(parts), per_part)


def assemble(alg: Algebra, module_part: Iterable[Sequence[int]], proj_part: Iterable[Sequence[int]]) -> SumComplex:
    """``sum over x of P^{M_x}`` plus ``P_y[d]`` (stalks in degree ``-d``)."""
    parts = [min_presentation(alg, x) for x in module_part]
    vi = alg.vertex_index
    for y in proj_part:
        parts.append(stalk(alg, [vi[alg.top(y)]], -alg.d))
    return direct_sum(parts, alg)


# ---------------------------------------------------------------------------
# chain maps and homotopies


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Components ``comps[p]: source.terms[p] -> target.terms[p]``."""

    source: ProjComplex
    target: ProjComplex
    comps: tuple[PMap, ...]

    def flatten(self) -> list:
        out: list = []
        for c in self.comps:
            out.extend(c.flatten())
        return out

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    def is_chain_map(self) -> bool:
        for p in range(len(self.source.diffs)):
            lhs = pcompose(self.target.diffs[p], self.comps[p])
            rhs = pcompose(self.comps[p + 1], self.source.diffs[p])
            if not (lhs + rhs.scale(-1)).is_zero():
                return False
        return True


def ccompose(g: ChainMap, f: ChainMap) -> ChainMap:
    return ChainMap(f.source, g.target, tuple(pcompose(a, b) for a, b in zip(g.comps, f.comps)))


class _System:
    """Sparse linear system builder keyed by hashable row labels."""

    def __init__(self) -> None:
        self.rows: dict[Hashable, int] = {}
        self.entries: dict[tuple[int, int], object] = {}

    def add(self, row: Hashable, col: int, value) -> None:
        if not value:
            return
        r = self.rows.setdefault(row, len(self.rows))
        key = (r, col)
        self.entries[key] = self.entries.get(key, 0) + value

    def matrix(self, ncols: int):
        return la.sparse(self.entries, len(self.rows), ncols)


def _variables(calc: ProjectiveCalculus, src: Sequence[tuple[int, ...]], tgt: Sequence[tuple[int, ...] | None]):
    """Index the allowed positions of maps ``src[p] -> tgt[p]`` (``None`` target means absent)."""
    index: dict[tuple[int, int, int], int] = {}
    for p, (s, t) in enumerate(zip(src, tgt)):
        if t is None:
            continue
        for j, b in enumerate(t):
            for i, a in enumerate(s):
                if calc.allowed(a, b):
                    index[(p, j, i)] = len(index)
    return index


def _add_left(sys_: _System, calc, tag, g: PMap, var: dict, p: int, src: Sequence[int], sign=1) -> None:
    """Add ``sign * g o F_p`` where ``F_p`` is the unknown block at position ``p``."""
    for (k, j), w in g.entries.items():
        for i, a in enumerate(src):
            col = var.get((p, j, i))
            if col is None:
                continue
            kap = calc.kappa(a, g.source[j], g.target[k])
            if kap:
                sys_.add((tag, k, i), col, sign * w * kap)


def _add_right(sys_: _System, calc, tag, f: PMap, var: dict, p: int, tgt: Sequence[int], sign=1) -> None:
    """Add ``sign * F_p o f`` where ``F_p`` is the unknown block at position ``p``."""
    for (j, i), w in f.entries.items():
        for k, c in enumerate(tgt):
            col = var.get((p, k, j))
            if col is None:
                continue
            kap = calc.kappa(f.source[i], f.target[j], c)
            if kap:
                sys_.add((tag, k, i), col, sign * w * kap)


def _shifted(y: ProjComplex, s: int):
    """Terms and differentials of ``Y[s]`` aligned with positions ``0..d``."""
    d = y.algebra.d
    terms = []
    diffs = []
    sign = -1 if s % 2 else 1
    for p in range(d + 1):
        q = p + s
        terms.append(y.terms[q] if 0 <= q <= d else None)
    for p in range(d):
        q = p + s
        diffs.append(y.diffs[q].scale(sign) if 0 <= q < d else None)
    return terms, diffs


def _chain_system(x: ProjComplex, y: ProjComplex, s: int):
    calc = x.calc
    d = x.algebra.d
    yterms, ydiffs = _shifted(y, s)
    var = _variables(calc, x.terms, yterms)
    sys_ = _System()
    for p in range(d + 1):
        # equation on maps x_p -> y[s]_{p+1}
        if p + 1 > d or yterms[p + 1] is None:
            continue
        if yterms[p] is not None and ydiffs[p] is not None:
            _add_left(sys_, calc, p, ydiffs[p], var, p, x.terms[p])
        _add_right(sys_, calc, p, x.diffs[p], var, p + 1, yterms[p + 1], sign=-1)
    return var, sys_.matrix(len(var)), yterms, ydiffs


def _vector_to_pmaps(calc, var, vec, src_terms, tgt_terms) -> list[PMap]:
    blocks = []
    for p, (s, t) in enumerate(zip(src_terms, tgt_terms)):
        blocks.append({})
    for (p, j, i), col in var.items():
        v = vec[col]
        if v:
            blocks[p][(j, i)] = v
    return [PMap(calc, tuple(s), tuple(t) if t is not None else (), blocks[p]) for p, (s, t) in enumerate(zip(src_terms, tgt_terms))]


def chain_map_basis(x: ProjComplex, y: ProjComplex) -> list[ChainMap]:
    """A basis of the chain maps ``x -> y`` (no shift)."""
    var, mat, yterms, _ = _chain_system(x, y, 0)
    if not var:
        return []
    ker = la.kernel(mat)
    out = []
    for col in la.rows_of(ker.transpose()) if ker.shape[1] else []:
        comps = _vector_to_pmaps(x.calc, var, col, x.terms, yterms)
        out.append(ChainMap(x, y, tuple(comps)))
    return out


@dataclass(frozen=True)
class HomotopyHom:
    dimension: int
    cycles: int
    boundaries: int
    representatives: tuple


def hom_K(x: ProjComplex, y: ProjComplex, shift: int = 0, with_basis: bool = False) -> HomotopyHom:
    """``Hom(x, y[shift])`` in the homotopy category: chain maps modulo null-homotopic maps."""
    calc = x.calc
    d = x.algebra.d
    var, mat, yterms, ydiffs = _chain_system(x, y, shift)
    if not var:
        return HomotopyHom(0, 0, 0, ())
    ker = la.kernel(mat)
    cycles = ker.shape[1]
    if cycles == 0:
        return HomotopyHom(0, 0, 0, ())
    # homotopies h_p: x_p -> y[shift]_{p-1}
    hterms = [yterms[p - 1] if p >= 1 else _outside(y, shift - 1) for p in range(d + 1)]
    hvar = _variables(calc, x.terms, hterms)
    images = []
    for (p, j, i), _col in hvar.items():
        h = {p: PMap(calc, x.terms[p], hterms[p], {(j, i): la.QQ(1)})}
        vec = [0] * len(var)
        # f_p = d_y[s] o h_p  (lands in position p) and f_{p-1} = h_p o d_x^{p-1}
        if p >= 1 and ydiffs[p - 1] is not None:
            comp = pcompose(ydiffs[p - 1], h[p])
            for (jj, ii), v in comp.entries.items():
                vec[var[(p, jj, ii)]] += v
        if p >= 1:
            comp = pcompose(h[p], x.diffs[p - 1])
            for (jj, ii), v in comp.entries.items():
                vec[var[(p - 1, jj, ii)]] += v
        images.append(vec)
    # the homotopy with h_0 mapping into y[shift]_{-1}: it contributes d_y o h_0 at position 0
    extra = _outside_images(x, y, shift, var, calc)
    images.extend(extra)
    bnd = la.rank(la.as_matrix(images)) if images and var else 0
    reps: tuple = ()
    if with_basis:
        reps = tuple(
            _vector_to_pmaps(calc, var, col, x.terms, yterms) for col in la.rows_of(ker.transpose())
        )
    return HomotopyHom(cycles - bnd, cycles, bnd, reps)


def _outside(y: ProjComplex, q_shift: int):
    """Term of ``y[shift]`` one position below position 0, when it exists."""
    d = y.algebra.d
    q = q_shift  # position -1 + shift in y
    return y.terms[q] if 0 <= q <= d else None


def _outside_images(x: ProjComplex, y: ProjComplex, shift: int, var, calc) -> list[list]:
    """Null-homotopic maps coming from ``h_0: x_0 -> y[shift]_{-1}`` and ``h_{d+1}``.

    Position ``-1`` of ``y[shift]`` is ``y`` at position ``shift - 1``; its
    differential into position 0 contributes ``d o h_0`` at position 0.  A
    homotopy ``h_{d+1}`` would start at an absent term, so it contributes nothing.
    """
    d = x.algebra.d
    q = shift - 1
    if not 0 <= q < d:
        return []
    sign = -1 if shift % 2 else 1
    dy = y.diffs[q].scale(sign)
    tgt = y.terms[q]
    out = []
    for j, b in enumerate(tgt):
        for i, a in enumerate(x.terms[0]):
            if not calc.allowed(a, b):
                continue
            h = PMap(calc, x.terms[0], tgt, {(j, i): la.QQ(1)})
            comp = pcompose(dy, h)
            vec = [0] * len(var)
            for (jj, ii), v in comp.entries.items():
                vec[var[(0, jj, ii)]] += v
            out.append(vec)
    return out


def is_presilting(s: ProjComplex, max_shift: int | None = None) -> bool:
    """``Hom(s, s[i]) = 0`` for ``i = 1..max_shift`` (default ``2d``).

    Shifts beyond ``d`` vanish because the terms no longer overlap; they are
    computed anyway rather than skipped.
    """
    top = max_shift if max_shift is not None else 2 * s.algebra.d
    return all(hom_K(s, s, i).dimension == 0 for i in range(1, top + 1))


# ---------------------------------------------------------------------------
# homology


def realize_diffs(x: ProjComplex) -> tuple[list[QuiverRep], list[RepMap]]:
    calc = x.calc
    terms = [calc.realize_term(t) for t in x.terms]
    maps = [calc.realize(f, terms[p], terms[p + 1]) for p, f in enumerate(x.diffs)]
    return terms, maps


def homology_dims(x: ProjComplex) -> dict[int, tuple[int, ...]]:
    """Dimension vectors of the homology, keyed by degree."""
    terms, maps = realize_diffs(x)
    d = x.algebra.d
    nv = len(x.algebra.vertices)
    out = {}
    for p in range(d + 1):
        dims = []
        for w in range(nv):
            total = terms[p].dims[w]
            out_rank = la.rank(maps[p].comps[w]) if p < d else 0
            in_rank = la.rank(maps[p - 1].comps[w]) if p > 0 else 0
            dims.append(total - out_rank - in_rank)
        out[p - d] = tuple(dims)
    return out


def is_inner_acyclic(x: ProjComplex) -> bool:
    d = x.algebra.d
    hom = homology_dims(x)
    return all(not any(hom[k]) for k in range(-d + 1, 0))


def h0(x: ProjComplex) -> QuiverRep:
    terms, maps = realize_diffs(x)
    if not maps:
        return terms[-1]
    return R.factorize(maps[-1]).cokernel


def in_P_d_M(x: ProjComplex) -> bool:
    """Inner acyclic with ``H_0`` a direct sum of indecomposables ``M_x``."""
    if not is_inner_acyclic(x):
        return False
    top = h0(x)
    if top.is_zero():
        return True
    alg = x.algebra
    try:
        R.decompose(top, {y: R.realize_module(alg, y) for y in alg.indecs})
    except R.DecompositionError:
        return False
    return True


# ---------------------------------------------------------------------------
# the exact category of (d+1)-term complexes


class ComplexCategory:
    """Chain-map Hom and compositions, for the generic approximation routine."""

    def __init__(self) -> None:
        self._hom_cache: dict[tuple[Hashable, Hashable], list[ChainMap]] = {}

    def hom(self, x: ProjComplex, y: ProjComplex, keys=None) -> list[ChainMap]:
        if keys is None:
            return chain_map_basis(x, y)
        if keys not in self._hom_cache:
            self._hom_cache[keys] = chain_map_basis(x, y)
        return self._hom_cache[keys]

    compose = staticmethod(ccompose)

    @staticmethod
    def flatten(f: ChainMap) -> list:
        return f.flatten()

    @staticmethod
    def trace(f: ChainMap):
        total = la.QQ(0)
        for c in f.comps:
            for i in range(len(c.source)):
                total += c.entries.get((i, i), 0)
        return total

    @staticmethod
    def unit_trace(x: ProjComplex):
        return la.QQ(x.summand_count())

    @staticmethod
    def direct_sum(objs: Sequence[ProjComplex]) -> ProjComplex:
        return direct_sum(objs).total

    @staticmethod
    def map_into_sum(source: ProjComplex, maps: Sequence[ChainMap], total: ProjComplex) -> ChainMap:
        comps = []
        for p in range(len(source.terms)):
            entries = {}
            off = 0
            for m in maps:
                for (j, i), v in m.comps[p].entries.items():
                    entries[(off + j, i)] = v
                off += len(m.target.terms[p])
            comps.append(PMap(source.calc, source.terms[p], total.terms[p], entries))
        return ChainMap(source, total, tuple(comps))


def _split_cokernel_term(calc: ProjectiveCalculus, f: PMap) -> tuple[tuple[int, ...], PMap, PMap]:
    """For a split mono ``f: X -> Y`` of projectives, a complement ``C`` with
    inclusion ``C -> Y`` and projection ``Y -> C`` killing the image of ``f``."""
    src, tgt = f.source, f.target
    chosen: list[int] = []
    for v in sorted(set(tgt)):
        rows = [j for j, b in enumerate(tgt) if b == v]
        cols = [i for i, a in enumerate(src) if a == v]
        top = la.as_matrix([[f.entries.get((j, i), 0) for i in cols] for j in rows], len(cols))
        r = la.rank(top)
        if r != len(cols):
            raise NotAnInflation("approximation is not a degreewise split monomorphism")
        current = top
        for pos, j in enumerate(rows):
            e = la.sparse({(pos, 0): 1}, len(rows), 1)
            trial = la.hstack([current, e]) if current.shape[1] else e
            if la.rank(trial) > r:
                chosen.append(j)
                current = trial
                r += 1
    for v in set(src):
        if v not in set(tgt):
            raise NotAnInflation("approximation is not a degreewise split monomorphism")
    chosen.sort()
    comp_labels = tuple(tgt[j] for j in chosen)
    incl = PMap(calc, comp_labels, tgt, {(j, c): la.QQ(1) for c, j in enumerate(chosen)})
    # Phi = [f | incl]: src + comp -> tgt is invertible; solve G o Phi = id for G.
    mid = tuple(src) + comp_labels
    phi_entries = dict(f.entries)
    for (j, c), v in incl.entries.items():
        phi_entries[(j, len(src) + c)] = v
    phi = PMap(calc, mid, tgt, phi_entries)
    gvar = {}
    for k, c in enumerate(mid):
        for j, b in enumerate(tgt):
            if calc.allowed(b, c):
                gvar[(0, k, j)] = len(gvar)
    sys_ = _System()
    _add_right(sys_, calc, "eq", phi, gvar, 0, mid)
    mat = sys_.matrix(len(gvar))
    # right-hand side: identity on mid, indexed like the rows of the system
    rhs_entries = {}
    for k, c in enumerate(mid):
        key = ("eq", k, k)
        if key not in sys_.rows:
            raise NotAnInflation("complement construction failed")
        rhs_entries[(sys_.rows[key], 0)] = 1
    rhs = la.sparse(rhs_entries, len(sys_.rows), 1)
    sol = la.solve(mat, rhs)
    if sol is None:
        raise NotAnInflation("complement construction failed")
    vec = [sol[r, 0].element for r in range(sol.shape[0])]
    proj_entries = {}
    for (_, k, j), col in gvar.items():
        if k >= len(src) and vec[col]:
            proj_entries[(k - len(src), j)] = vec[col]
    proj = PMap(calc, tgt, comp_labels, proj_entries)
    return comp_labels, incl, proj


def split_cokernel(f: ChainMap) -> tuple[ProjComplex, ChainMap]:
    """Degreewise cokernel of a degreewise split monomorphism, with its projection."""
    y = f.target
    calc = y.calc
    d = y.algebra.d
    labels, incls, projs = [], [], []
    for p in range(d + 1):
        c, i, q = _split_cokernel_term(calc, f.comps[p])
        labels.append(c)
        incls.append(i)
        projs.append(q)
    diffs = [pcompose(projs[p + 1], pcompose(y.diffs[p], incls[p])) for p in range(d)]
    coker = ProjComplex(y.algebra, tuple(labels), tuple(diffs))
    proj = ChainMap(y, coker, tuple(projs))
    if not proj.is_chain_map() or not coker.is_complex():
        raise ArithmeticError("cokernel differential is not well defined")
    for p in range(d + 1):
        if not pcompose(projs[p], f.comps[p]).is_zero():
            raise ArithmeticError("projection does not kill the image")
    return coker, proj


# ---------------------------------------------------------------------------
# silting witness


@dataclass(frozen=True, eq=False)
class WitnessStep:
    source: ProjComplex
    approximation: R.Approximation
    cokernel: ProjComplex
    projection: ChainMap | None


@dataclass(frozen=True, eq=False)
class Witness:
    """``0 -> A -> W^0 -> ... -> W^k -> 0`` built from iterated minimal approximations."""

    steps: tuple[WitnessStep, ...]
    generator_keys: tuple[Hashable, ...]

    def terms(self) -> list[dict[Hashable, int]]:
        out = []
        for step in self.steps:
            counts: dict[Hashable, int] = {}
            for j, _ in step.approximation.components:
                key = self.generator_keys[j]
                counts[key] = counts.get(key, 0) + 1
            out.append(counts)
        return out

    def __len__(self) -> int:
        return len(self.steps)


def _regular_stalk(alg: Algebra) -> ProjComplex:
    return stalk(alg, list(range(len(alg.vertices))), 0)


def contractible_generators(alg: Algebra) -> list[tuple[Hashable, ProjComplex]]:
    out = []
    for i in range(-alg.d, 0):
        for v in range(len(alg.vertices)):
            out.append((("D", i, alg.vertices[v]), contractible(alg, v, i)))
    return out


def _category(alg: Algebra) -> tuple[ComplexCategory, R.Radicals]:
    cache = alg._cache
    if "complex_category" not in cache:
        cat = ComplexCategory()
        cache["complex_category"] = (cat, R.Radicals(cat))
    return cache["complex_category"]


def silting_witness(
    alg: Algebra,
    generators: Sequence[tuple[Hashable, ProjComplex]],
) -> Witness:
    """Iterate minimal left ``add(generators)``-approximations starting from ``A``.

    Each approximation must be a degreewise split monomorphism; its degreewise
    cokernel is approximated next.  The process must reach the zero complex
    after at most ``d + 1`` approximations, otherwise :class:`WitnessNotFound`.
    """
    cat, rads = _category(alg)
    keys = [k for k, _ in generators]
    objs = [g for _, g in generators]
    current = _regular_stalk(alg)
    source_key: Hashable | None = ("regular",)
    steps: list[WitnessStep] = []
    for _ in range(alg.d + 1):
        approx = R.minimal_left_approximation_generic(cat, current, objs, keys, rads, source_key=source_key)
        if approx.morphism is None:
            raise WitnessNotFound("a nonzero complex admits no map to the generators")
        coker, proj = split_cokernel(approx.morphism)
        steps.append(WitnessStep(current, approx, coker, proj))
        if coker.is_zero():
            witness = Witness(tuple(steps), tuple(keys))
            _check_exact(alg, witness)
            return witness
        current = coker
        source_key = None
    raise WitnessNotFound("approximations did not terminate within d + 1 steps")


def _check_exact(alg: Algebra, witness: Witness) -> None:
    """Degreewise exactness of ``0 -> A -> W^0 -> ... -> W^k -> 0`` via realized matrices."""
    calc = calculus(alg)
    d = alg.d
    steps = witness.steps
    # maps between consecutive terms: W^i -> C^{i+1} -> W^{i+1}
    chain: list[ChainMap] = [steps[0].approximation.morphism]
    for i in range(len(steps) - 1):
        chain.append(ccompose(steps[i + 1].approximation.morphism, steps[i].projection))
    objects = [steps[0].source] + [s.approximation.target for s in steps]
    for p in range(d + 1):
        reps_ = [calc.realize_term(o.terms[p]) for o in objects]
        maps = [calc.realize(c.comps[p], reps_[k], reps_[k + 1]) for k, c in enumerate(chain)]
        for w in range(len(alg.vertices)):
            ranks = [la.rank(m.comps[w]) for m in maps]
            dims = [r.dims[w] for r in reps_]
            # injective at the start, exact in the middle, surjective at the end
            if ranks and ranks[0] != dims[0]:
                raise WitnessNotFound("first map is not injective")
            for k in range(1, len(dims)):
                incoming = ranks[k - 1]
                outgoing = ranks[k] if k < len(ranks) else 0
                if incoming + outgoing != dims[k]:
                    raise WitnessNotFound("witness sequence is not exact")
        for k in range(len(chain) - 1):
            if not pcompose(chain[k + 1].comps[p], chain[k].comps[p]).is_zero():
                raise WitnessNotFound("witness sequence is not a complex")


@dataclass(frozen=True, eq=False)
class SiltingCertificate:
    presilting: bool
    summand_count: int
    expected_count: int
    witness: Witness | None
    witness_in_add: bool

    @property
    def count_matches(self) -> bool:
        return self.summand_count == self.expected_count

    @property
    def silting(self) -> bool:
        return self.presilting and self.witness is not None and self.witness_in_add

    def to_json(self) -> dict:
        return {
            "presilting": self.presilting,
            "summand_count": self.summand_count,
            "expected_count": self.expected_count,
            "witness_length": len(self.witness) if self.witness else None,
            "witness_in_add": self.witness_in_add,
            "silting": self.silting,
        }


def is_silting(alg: Algebra, torsion_class: Iterable[Sequence[int]], module_part, proj_part) -> SiltingCertificate:
    """Certificate for ``assemble(module_part, proj_part)`` attached to a d-torsion class.

    The witness approximates by the presentations of every member of the class,
    all stalks ``P[d]`` and all contractible complexes; the certificate then
    checks that only summands of the assembled complex (and contractibles) occur.
    """
    members = [tuple(x) for x in torsion_class]
    module_part = [tuple(x) for x in module_part]
    proj_part = [tuple(y) for y in proj_part]
    total = assemble(alg, module_part, proj_part).total
    presilting = is_presilting(total)
    gens: list[tuple[Hashable, ProjComplex]] = []
    for x in members:
        gens.append((("pres", x), _presentation_cached(alg, x)))
    for y in alg.vertices:
        gens.append((("shift", y), stalk(alg, [alg.vertex_index[y]], -alg.d)))
    gens.extend(contractible_generators(alg))
    witness = silting_witness(alg, _cached_generators(alg, gens))
    allowed = {("pres", x) for x in module_part} | {("shift", alg.top(y)) for y in proj_part}
    in_add = all(
        key in allowed or key[0] == "D" for term in witness.terms() for key in term
    )
    count = len(set(module_part)) + len(set(proj_part))
    return SiltingCertificate(presilting, count, len(alg.vertices), witness, in_add)


def _presentation_cached(alg: Algebra, x: Tup) -> ProjComplex:
    cache = alg._cache.setdefault("presentations", {})
    if x not in cache:
        cache[x] = min_presentation(alg, x)
    return cache[x]


def _cached_generators(alg: Algebra, gens: list[tuple[Hashable, ProjComplex]]) -> list[tuple[Hashable, ProjComplex]]:
    """Reuse one object per key so chain-map Hom caches stay consistent."""
    cache = alg._cache.setdefault("generator_objects", {})
    out = []
    for key, obj in gens:
        if key not in cache:
            cache[key] = obj
        out.append((key, cache[key]))
    return out


def silting_certificate_for_summands(alg: Algebra, summands: Sequence[tuple[Hashable, ProjComplex]]) -> SiltingCertificate:
    """Certificate for an arbitrary complex given by its indecomposable summands."""
    total = direct_sum([s for _, s in summands], alg).total
    presilting = is_presilting(total)
    seen = {}
    for key, s in summands:
        seen.setdefault(key, s)
    gens = list(seen.items()) + contractible_generators(alg)
    witness = silting_witness(alg, _cached_generators(alg, gens))
    return SiltingCertificate(presilting, len(seen), len(alg.vertices), witness, True)
