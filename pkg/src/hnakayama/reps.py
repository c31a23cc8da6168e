"""Explicit quiver representations of A_l^d over the rationals.

This module is the brute-force oracle for the combinatorial formulas: modules
are realised as vector spaces at vertices with one matrix per arrow, and all
Hom spaces, kernels, cokernels, approximations, resolutions and Ext groups are
obtained from exact nullspace and rank computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Sequence

from . import linalg as la
from .algebra import Algebra, Tup, in_os
from .linalg import Matrix

__all__ = [
    "DecompositionError",
    "Factorization",
    "ProjectiveResolution",
    "QuiverRep",
    "RepMap",
    "box_is_clear",
    "compose",
    "decompose",
    "direct_sum",
    "ext_dim",
    "factorize",
    "hom_basis",
    "hom_dim",
    "hom_from_projective",
    "is_module",
    "minimal_left_approximation",
    "minimal_proj_resolution",
    "module_category",
    "projective_cover",
    "projective_rep",
    "realize_module",
    "simple_rep",
    "trace_submodule",
]


class DecompositionError(RuntimeError):
    """A representation could not be matched against the candidate indecomposables."""


@dataclass(frozen=True, eq=False)
class QuiverRep:
    """A representation: ``dims[v]`` per vertex index, ``mats[a]`` per arrow index.

    ``mats[a]`` has shape ``(dims[target], dims[source])`` for the arrow
    ``algebra.arrow_index[a] == (source, target)``.
    """

    algebra: Algebra
    dims: tuple[int, ...]
    mats: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        arrows = self.algebra.arrow_index
        if len(self.dims) != len(self.algebra.vertices) or len(self.mats) != len(arrows):
            raise ValueError("representation does not match the quiver")
        for (s, t), m in zip(arrows, self.mats):
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow matrix shape {m.shape} inconsistent with dims")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> dict[Tup, int]:
        return {v: self.dims[i] for i, v in enumerate(self.algebra.vertices) if self.dims[i]}

    def to_json(self) -> dict:
        verts = self.algebra.vertices
        return {
            "dims": {",".join(map(str, verts[i])): k for i, k in enumerate(self.dims) if k},
            "arrows": [
                {
                    "source": list(verts[s]),
                    "target": list(verts[t]),
                    "matrix": [[str(v) for v in row] for row in la.rows_of(m)],
                }
                for (s, t), m in zip(self.algebra.arrow_index, self.mats)
                if m.shape[0] and m.shape[1]
            ],
        }


@dataclass(frozen=True, eq=False)
class RepMap:
    """A morphism of representations, one matrix per vertex index."""

    source: QuiverRep
    target: QuiverRep
    comps: tuple[Matrix, ...]

    def is_commuting(self) -> bool:
        for a, (s, t) in enumerate(self.source.algebra.arrow_index):
            lhs = la.mul(self.target.mats[a], self.comps[s])
            rhs = la.mul(self.comps[t], self.source.mats[a])
            if lhs.shape[0] and lhs.shape[1] and lhs != rhs:
                return False
        return True

    def is_zero(self) -> bool:
        return all(la.is_zero(c) for c in self.comps)

    def rank(self) -> int:
        return sum(la.rank(c) for c in self.comps)

    def flatten(self) -> list:
        out: list = []
        for c in self.comps:
            for row in la.rows_of(c):
                out.extend(row)
        return out

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale(self, c) -> "RepMap":
        q = la.QQ(c)
        return RepMap(self.source, self.target, tuple(m * q for m in self.comps))


def _mat(nrows: int, ncols: int, identity: bool) -> Matrix:
    if identity and nrows == ncols == 1:
        return la.eye(1)
    return la.zeros(nrows, ncols)


def _rep_from_support(alg: Algebra, support: set[int]) -> QuiverRep:
    dims = tuple(1 if i in support else 0 for i in range(len(alg.vertices)))
    mats = tuple(
        _mat(dims[t], dims[s], s in support and t in support) for s, t in alg.arrow_index
    )
    return QuiverRep(alg, dims, mats)


def realize_module(alg: Algebra, x: Sequence[int]) -> QuiverRep:
    """``M_x``: the field at each supported vertex and identities along arrows."""
    x = tuple(x)
    if not alg.is_indec(x):
        raise ValueError(f"{x} is not an indecomposable of M")
    support = {alg.vertex_index[y] for y in alg.support(x)}
    return _rep_from_support(alg, support)


def simple_rep(alg: Algebra, v: Sequence[int]) -> QuiverRep:
    return _rep_from_support(alg, {alg.vertex_index[tuple(v)]})


def zero_rep(alg: Algebra) -> QuiverRep:
    return _rep_from_support(alg, set())


def box_is_clear(alg: Algebra, low: Sequence[int], high: Sequence[int]) -> bool:
    """Whether every integer point ``low <= z <= high`` lies in ``os_l^d``.

    A_l^d is the incidence algebra of the grid poset modulo the vertices outside
    ``os_l^d``; the path class from ``high`` down to ``low`` is nonzero exactly when
    the box between them avoids those vertices.
    """
    if any(a > b for a, b in zip(low, high)):
        return False
    ranges = [range(a, b + 1) for a, b in zip(low, high)]
    return all(in_os(alg.kupisch, z) for z in product(*ranges))


def projective_rep(alg: Algebra, v: Sequence[int]) -> QuiverRep:
    """The indecomposable projective at ``v`` computed from the incidence-algebra model."""
    v = tuple(v)
    support = {alg.vertex_index[w] for w in alg.vertices if box_is_clear(alg, w, v)}
    return _rep_from_support(alg, support)


def injective_rep(alg: Algebra, v: Sequence[int]) -> QuiverRep:
    v = tuple(v)
    support = {alg.vertex_index[w] for w in alg.vertices if box_is_clear(alg, v, w)}
    return _rep_from_support(alg, support)


def _path_maps(rep: QuiverRep) -> dict[tuple[int, int], list[Matrix]]:
    """All composites along paths, keyed by (start, end) vertex indices."""
    alg = rep.algebra
    nv = len(alg.vertices)
    verts = alg.vertices
    by_source: dict[int, list[tuple[int, int]]] = {}
    for a, (s, t) in enumerate(alg.arrow_index):
        by_source.setdefault(s, []).append((a, t))
    order = sorted(range(nv), key=lambda i: -sum(verts[i]))
    paths: dict[tuple[int, int], list[Matrix]] = {}
    for start in order:
        frontier = {start: [la.eye(rep.dims[start])]}
        level = [start]
        while level:
            nxt: list[int] = []
            for u in level:
                for a, t in by_source.get(u, []):
                    extended = [la.mul(rep.mats[a], m) for m in frontier[u]]
                    if t not in frontier:
                        frontier[t] = []
                        nxt.append(t)
                    frontier[t].extend(extended)
            level = nxt
        for end, mats in frontier.items():
            if end != start:
                paths[(start, end)] = mats
    return paths


def is_module(rep: QuiverRep) -> bool:
    """Check the defining relations of A_l^d on a representation.

    Parallel paths must agree, and a path whose box meets a vertex outside
    ``os_l^d`` must act as zero.
    """
    alg = rep.algebra
    verts = alg.vertices
    for (start, end), mats in _path_maps(rep).items():
        first = mats[0]
        if any(m != first for m in mats[1:]):
            return False
        if not box_is_clear(alg, verts[end], verts[start]) and not la.is_zero(first):
            return False
    return True


def direct_sum(reps: Sequence[QuiverRep]) -> QuiverRep:
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    alg = reps[0].algebra
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(len(alg.vertices)))
    mats = tuple(la.block_diag([r.mats[a] for r in reps]) for a in range(len(alg.arrow_index)))
    return QuiverRep(alg, dims, mats)


def _offsets(reps: Sequence[QuiverRep], v: int) -> list[int]:
    out, acc = [], 0
    for r in reps:
        out.append(acc)
        acc += r.dims[v]
    return out


def injection(reps: Sequence[QuiverRep], k: int, total: QuiverRep | None = None) -> RepMap:
    total = total or direct_sum(reps)
    comps = []
    for v in range(len(total.dims)):
        off = _offsets(reps, v)[k]
        comps.append(
            la.sparse({(off + i, i): 1 for i in range(reps[k].dims[v])}, total.dims[v], reps[k].dims[v])
        )
    return RepMap(reps[k], total, tuple(comps))


def projection(reps: Sequence[QuiverRep], k: int, total: QuiverRep | None = None) -> RepMap:
    total = total or direct_sum(reps)
    comps = []
    for v in range(len(total.dims)):
        off = _offsets(reps, v)[k]
        comps.append(
            la.sparse({(i, off + i): 1 for i in range(reps[k].dims[v])}, reps[k].dims[v], total.dims[v])
        )
    return RepMap(total, reps[k], tuple(comps))


def map_into_sum(source: QuiverRep, maps: Sequence[RepMap], total: QuiverRep) -> RepMap:
    """The morphism ``source -> total`` whose components are ``maps``."""
    comps = []
    for v in range(len(source.dims)):
        comps.append(la.vstack([m.comps[v] for m in maps], ncols=source.dims[v]) if maps else la.zeros(0, source.dims[v]))
    return RepMap(source, total, tuple(comps))


def map_from_sum(total: QuiverRep, maps: Sequence[RepMap], target: QuiverRep) -> RepMap:
    """The morphism ``total -> target`` whose restrictions to the summands are ``maps``."""
    comps = []
    for v in range(len(target.dims)):
        comps.append(la.hstack([m.comps[v] for m in maps], nrows=target.dims[v]) if maps else la.zeros(target.dims[v], 0))
    return RepMap(total, target, tuple(comps))


def identity(rep: QuiverRep) -> RepMap:
    return RepMap(rep, rep, tuple(la.eye(k) for k in rep.dims))


def zero_map(source: QuiverRep, target: QuiverRep) -> RepMap:
    return RepMap(source, target, tuple(la.zeros(target.dims[v], source.dims[v]) for v in range(len(source.dims))))


def compose(g: RepMap, f: RepMap) -> RepMap:
    """``g o f``."""
    comps = []
    for v in range(len(f.comps)):
        comps.append(la.mul(g.comps[v], f.comps[v]))
    return RepMap(f.source, g.target, tuple(comps))


def hom_basis(m: QuiverRep, n: QuiverRep) -> list[RepMap]:
    """A basis of ``Hom(M, N)`` from the commuting-square equations."""
    alg = m.algebra
    nv = len(alg.vertices)
    offsets = []
    acc = 0
    for v in range(nv):
        offsets.append(acc)
        acc += n.dims[v] * m.dims[v]
    nvars = acc
    if nvars == 0:
        return []
    entries: dict[tuple[int, int], object] = {}
    row = 0
    for a, (s, t) in enumerate(alg.arrow_index):
        # N_a X_s - X_t M_a = 0, an (n_t x m_s) system
        na = la.rows_of(n.mats[a])
        ma = la.rows_of(m.mats[a])
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                used = False
                for k in range(n.dims[s]):
                    c = na[i][k]
                    if c:
                        key = (row, offsets[s] + k * m.dims[s] + j)
                        entries[key] = entries.get(key, 0) + c
                        used = True
                for k in range(m.dims[t]):
                    c = ma[k][j]
                    if c:
                        key = (row, offsets[t] + i * m.dims[t] + k)
                        entries[key] = entries.get(key, 0) - c
                        used = True
                if used:
                    row += 1
    system = la.sparse(entries, row, nvars)
    ker = la.kernel(system)
    basis = []
    for col in la.rows_of(ker.transpose()) if ker.shape[1] else []:
        comps = []
        for v in range(nv):
            r, c = n.dims[v], m.dims[v]
            block = col[offsets[v] : offsets[v] + r * c]
            comps.append(la.as_matrix([block[i * c : (i + 1) * c] for i in range(r)], c) if r and c else la.zeros(r, c))
        basis.append(RepMap(m, n, tuple(comps)))
    return basis


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    return len(hom_basis(m, n))


@dataclass(frozen=True, eq=False)
class Factorization:
    kernel: QuiverRep
    kernel_inclusion: RepMap
    image: QuiverRep
    coimage_map: RepMap
    image_inclusion: RepMap
    cokernel: QuiverRep
    cokernel_projection: RepMap


def _induced(sub_t: Matrix, target_side: Matrix) -> Matrix:
    """Solve ``sub_t * X = target_side`` for ``X`` (columns of sub_t independent)."""
    if target_side.shape[1] == 0 or sub_t.shape[1] == 0:
        return la.zeros(sub_t.shape[1], target_side.shape[1])
    x = la.solve(sub_t, target_side)
    if x is None:
        raise ArithmeticError("subspace is not stable under the arrow map")
    return x


def factorize(f: RepMap) -> Factorization:
    """Kernel, image and cokernel of ``f`` computed vertex by vertex."""
    m, n = f.source, f.target
    alg = m.algebra
    nv = len(alg.vertices)
    kers, ims, projs = [], [], []
    for v in range(nv):
        fv = f.comps[v]
        kers.append(la.kernel(fv) if m.dims[v] else la.zeros(0, 0))
        if n.dims[v] and m.dims[v] and not la.is_zero(fv):
            _, pivots = fv.to_sparse().rref()
            im = la.select_columns(fv, pivots)
        else:
            im = la.zeros(n.dims[v], 0)
        ims.append(im)
        if n.dims[v]:
            left = la.kernel(im.transpose()) if im.shape[1] else la.eye(n.dims[v])
            projs.append(left.transpose())
        else:
            projs.append(la.zeros(0, 0))
    kdims = tuple(k.shape[1] if m.dims[v] else 0 for v, k in enumerate(kers))
    idims = tuple(i.shape[1] for i in ims)
    cdims = tuple(p.shape[0] for p in projs)
    kmats, imats, cmats = [], [], []
    for a, (s, t) in enumerate(alg.arrow_index):
        kmats.append(_induced(kers[t], m.mats[a] * kers[s]) if kdims[s] and kdims[t] else la.zeros(kdims[t], kdims[s]))
        imats.append(_induced(ims[t], n.mats[a] * ims[s]) if idims[s] and idims[t] else la.zeros(idims[t], idims[s]))
        if cdims[s] and cdims[t]:
            # Z with Z P_s = P_t N_a; rows of P_s are independent
            rhs = projs[t] * n.mats[a]
            z = la.solve(projs[s].transpose(), rhs.transpose())
            if z is None:
                raise ArithmeticError("cokernel arrow map is not well defined")
            cmats.append(z.transpose())
        else:
            cmats.append(la.zeros(cdims[t], cdims[s]))
    kernel = QuiverRep(alg, kdims, tuple(kmats))
    image = QuiverRep(alg, idims, tuple(imats))
    cokernel = QuiverRep(alg, cdims, tuple(cmats))
    kin = RepMap(kernel, m, tuple(k if kdims[v] else la.zeros(m.dims[v], 0) for v, k in enumerate(kers)))
    iin = RepMap(image, n, tuple(ims))
    coim = []
    for v in range(nv):
        if idims[v]:
            coim.append(_induced(ims[v], f.comps[v]))
        else:
            coim.append(la.zeros(0, m.dims[v]))
    cpr = RepMap(n, cokernel, tuple(p if cdims[v] else la.zeros(0, n.dims[v]) for v, p in enumerate(projs)))
    return Factorization(kernel, kin, image, RepMap(m, image, tuple(coim)), iin, cokernel, cpr)


def hom_from_projective(p: QuiverRep, vertex: int, target: QuiverRep, vector: Matrix) -> RepMap:
    """The map from the projective ``p`` (top at ``vertex``) sending its generator to ``vector``.

    ``p`` must be one-dimensional on its support with identity arrows, as produced
    by :func:`projective_rep`.  Values propagate along arrows from the top.
    """
    alg = p.algebra
    comps: list[Matrix | None] = [None] * len(alg.vertices)
    comps[vertex] = vector
    by_source: dict[int, list[tuple[int, int]]] = {}
    for a, (s, t) in enumerate(alg.arrow_index):
        by_source.setdefault(s, []).append((a, t))
    level = [vertex]
    while level:
        nxt = []
        for u in level:
            for a, t in by_source.get(u, []):
                if p.dims[t] and comps[t] is None:
                    comps[t] = la.mul(target.mats[a], comps[u])
                    nxt.append(t)
        level = nxt
    full = tuple(c if c is not None else la.zeros(target.dims[v], p.dims[v]) for v, c in enumerate(comps))
    out = RepMap(p, target, full)
    if not out.is_commuting():
        raise ArithmeticError("target is not a module over the algebra")
    return out


def top_complement(rep: QuiverRep) -> list[Matrix]:
    """Per vertex, column vectors spanning a complement of the radical (images of incoming arrows)."""
    alg = rep.algebra
    out = []
    for v in range(len(alg.vertices)):
        k = rep.dims[v]
        if k == 0:
            out.append(la.zeros(0, 0))
            continue
        incoming = [rep.mats[a] for a, (s, t) in enumerate(alg.arrow_index) if t == v and rep.dims[s]]
        rad = la.hstack(incoming, nrows=k) if incoming else la.zeros(k, 0)
        r = la.rank(rad)
        chosen = []
        current = rad
        for i in range(k):
            e = la.sparse({(i, 0): 1}, k, 1)
            trial = la.hstack([current, e])
            if la.rank(trial) > r:
                chosen.append(e)
                current = trial
                r += 1
        out.append(la.hstack(chosen, nrows=k) if chosen else la.zeros(k, 0))
    return out


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    labels: tuple[int, ...]
    summands: tuple[QuiverRep, ...]
    module: QuiverRep
    epi: RepMap


def projective_cover(rep: QuiverRep) -> ProjectiveCover:
    alg = rep.algebra
    labels: list[int] = []
    maps: list[RepMap] = []
    summands: list[QuiverRep] = []
    for v, basis in enumerate(top_complement(rep)):
        for col in la.columns(basis) if basis.shape[1] else []:
            p = projective_rep(alg, alg.vertices[v])
            labels.append(v)
            summands.append(p)
            maps.append(hom_from_projective(p, v, rep, col))
    if not summands:
        z = zero_rep(alg)
        return ProjectiveCover((), (), z, zero_map(z, rep))
    total = direct_sum(summands)
    return ProjectiveCover(tuple(labels), tuple(summands), total, map_from_sum(total, maps, rep))


@dataclass(frozen=True, eq=False)
class ProjectiveResolution:
    """``P_k -> ... -> P_0 -> M``; ``labels[i]`` are the top vertices of ``P_i``."""

    module: QuiverRep
    labels: tuple[tuple[int, ...], ...]
    terms: tuple[QuiverRep, ...]
    augmentation: RepMap
    differentials: tuple[RepMap, ...]

    def multiplicities(self, i: int) -> dict[Tup, int]:
        verts = self.module.algebra.vertices
        out: dict[Tup, int] = {}
        for v in self.labels[i]:
            out[verts[v]] = out.get(verts[v], 0) + 1
        return out


def minimal_proj_resolution(rep: QuiverRep, length: int) -> ProjectiveResolution:
    """Minimal projective resolution up to ``P_length`` (stops early once it ends)."""
    cover = projective_cover(rep)
    labels = [cover.labels]
    terms = [cover.module]
    diffs: list[RepMap] = []
    current = cover
    for _ in range(length):
        fac = factorize(current.epi)
        if fac.kernel.is_zero():
            break
        nxt = projective_cover(fac.kernel)
        labels.append(nxt.labels)
        terms.append(nxt.module)
        diffs.append(compose(fac.kernel_inclusion, nxt.epi))
        current = nxt
    return ProjectiveResolution(rep, tuple(labels), tuple(terms), cover.epi, tuple(diffs))


def _rank_of_maps(maps: Sequence[RepMap]) -> int:
    if not maps:
        return 0
    vectors = [m.flatten() for m in maps]
    if not vectors[0]:
        return 0
    return la.rank(la.as_matrix(vectors))


def ext_dim(m: QuiverRep, n: QuiverRep, i: int, resolution: ProjectiveResolution | None = None) -> int:
    """``dim Ext^i(M, N)`` from the cohomology of ``Hom(P_., N)``."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    res = resolution if resolution is not None and len(resolution.terms) > i + 1 else minimal_proj_resolution(m, i + 1)
    if i >= len(res.terms):
        return 0
    hom_i = hom_basis(res.terms[i], n)
    if not hom_i:
        return 0
    out_rank = _rank_of_maps([compose(h, res.differentials[i]) for h in hom_i]) if i < len(res.differentials) else 0
    in_rank = 0
    if i > 0:
        prev = hom_basis(res.terms[i - 1], n)
        in_rank = _rank_of_maps([compose(h, res.differentials[i - 1]) for h in prev])
    return len(hom_i) - out_rank - in_rank


def trace_submodule(sources: Sequence[QuiverRep], target: QuiverRep) -> Factorization:
    """Image of the sum of all maps from ``sources`` into ``target`` (factorization of that map)."""
    maps = [h for s in sources for h in hom_basis(s, target)]
    if not maps:
        z = zero_rep(target.algebra)
        return factorize(zero_map(z, target))
    total = direct_sum([h.source for h in maps])
    return factorize(map_from_sum(total, maps, target))


# ---------------------------------------------------------------------------
# Additive-category interface shared with the complex category


class ModuleCategory:
    """Hom, composition and traces in mod A, for the generic approximation code."""

    def __init__(self) -> None:
        self._hom_cache: dict[tuple[Hashable, Hashable], list[RepMap]] = {}

    def hom(self, x: QuiverRep, y: QuiverRep, keys: tuple[Hashable, Hashable] | None = None) -> list[RepMap]:
        if keys is None:
            return hom_basis(x, y)
        if keys not in self._hom_cache:
            self._hom_cache[keys] = hom_basis(x, y)
        return self._hom_cache[keys]

    compose = staticmethod(compose)

    @staticmethod
    def flatten(f: RepMap) -> list:
        return f.flatten()

    @staticmethod
    def trace(f: RepMap):
        total = la.QQ(0)
        for c in f.comps:
            for i in range(min(c.shape)):
                total += c[i, i].element
        return total

    @staticmethod
    def unit_trace(x: QuiverRep):
        return la.QQ(x.total_dim)

    @staticmethod
    def is_zero_object(x: QuiverRep) -> bool:
        return x.is_zero()

    @staticmethod
    def identity(x: QuiverRep) -> RepMap:
        return identity(x)

    @staticmethod
    def direct_sum(objs: Sequence[QuiverRep]) -> QuiverRep:
        return direct_sum(objs)

    @staticmethod
    def map_into_sum(source: QuiverRep, maps: Sequence[RepMap], total: QuiverRep) -> RepMap:
        return map_into_sum(source, maps, total)


module_category = ModuleCategory


# ---------------------------------------------------------------------------
# Generic minimal approximations


@dataclass(frozen=True, eq=False)
class Approximation:
    """A minimal left approximation ``source -> target = sum of generators``.

    ``components`` lists ``(generator index, morphism source -> generator)`` in
    the order of the summands of ``target``.
    """

    source: object
    components: tuple[tuple[int, object], ...]
    multiplicities: tuple[int, ...]
    target: object
    morphism: object


class Radicals:
    """Caches a basis of the radical of ``End(G)`` for local endomorphism rings."""

    def __init__(self, cat) -> None:
        self.cat = cat
        self._cache: dict[Hashable, list] = {}

    def __call__(self, g, key: Hashable) -> list:
        if key in self._cache:
            return self._cache[key]
        cat = self.cat
        ends = cat.hom(g, g, (key, key))
        unit = cat.unit_trace(g)
        if unit == 0:
            raise ValueError("generator is zero")
        traces = [cat.trace(e) for e in ends]
        if not ends:
            raise ValueError("generator has no endomorphisms")
        # The radical is the kernel of the residue map e -> trace(e) / trace(1).
        null = la.kernel(la.as_matrix([traces])) if any(traces) else None
        if null is None:
            raise DecompositionError("endomorphism ring has no residue map; generator is not local")
        rad = []
        for col in la.rows_of(null.transpose()) if null.shape[1] else []:
            e = None
            for c, b in zip(col, ends):
                if c:
                    term = _scale(cat, b, c)
                    e = term if e is None else _add(cat, e, term)
            if e is not None:
                rad.append(e)
        _certify_nilpotent_ideal(cat, rad)
        self._cache[key] = rad
        return rad


def _scale(cat, f, c):
    return f.scale(c)


def _add(cat, f, g):
    return f + g


def _certify_nilpotent_ideal(cat, rad: list) -> None:
    """Check that the span of ``rad`` is closed under products and nilpotent."""
    if not rad:
        return
    base = la.as_matrix([cat.flatten(r) for r in rad])
    base_rank = la.rank(base)
    power = list(rad)
    for _ in range(len(rad) + 2):
        prods = [cat.compose(a, b) for a in power for b in rad]
        vecs = [cat.flatten(p) for p in prods]
        nonzero = [v for v in vecs if any(v)]
        if not nonzero:
            return
        stacked = la.as_matrix([cat.flatten(r) for r in rad] + nonzero)
        if la.rank(stacked) != base_rank:
            raise DecompositionError("radical candidate is not closed under composition")
        # keep a spanning set of the next power
        mat = la.as_matrix(nonzero)
        red, pivots = mat.transpose().to_sparse().rref()
        power = [prods[vecs.index(nonzero[p])] for p in pivots]
    raise DecompositionError("radical candidate is not nilpotent")


def minimal_left_approximation_generic(
    cat,
    source,
    generators: Sequence,
    keys: Sequence[Hashable],
    radicals: Radicals,
    source_key: Hashable | None = None,
    certify: bool = True,
) -> Approximation:
    """Minimal left ``add(generators)``-approximation of ``source``.

    ``generators`` must be pairwise non-isomorphic with local endomorphism rings.
    The multiplicity of ``G_j`` is the dimension of ``Hom(X, G_j)`` modulo the maps
    that factor through a radical morphism between generators.
    """
    m = len(generators)
    homs = [cat.hom(source, g, (source_key, keys[j]) if source_key is not None else None) for j, g in enumerate(generators)]
    chosen: list[tuple[int, object]] = []
    mults = [0] * m
    for j, g in enumerate(generators):
        if not homs[j]:
            continue
        factored = []
        for k, gk in enumerate(generators):
            if not homs[k]:
                continue
            if k == j:
                rads = radicals(g, keys[j])
            else:
                rads = cat.hom(gk, g, (keys[k], keys[j]))
            for r in rads:
                for h in homs[k]:
                    factored.append(cat.flatten(cat.compose(r, h)))
        current = [v for v in factored if any(v)]
        r0 = la.rank(la.as_matrix(current)) if current else 0
        for h in homs[j]:
            vec = cat.flatten(h)
            trial = current + [vec]
            r1 = la.rank(la.as_matrix(trial))
            if r1 > r0:
                chosen.append((j, h))
                mults[j] += 1
                current = trial
                r0 = r1
    chosen.sort(key=lambda c: c[0])
    targets = [generators[j] for j, _ in chosen]
    if targets:
        total = cat.direct_sum(targets)
        morphism = cat.map_into_sum(source, [h for _, h in chosen], total)
    else:
        total = None
        morphism = None
    approx = Approximation(source, tuple(chosen), tuple(mults), total, morphism)
    if certify:
        _certify_approximation(cat, approx, generators, keys, homs, radicals)
    return approx


def _certify_approximation(cat, approx: Approximation, generators, keys, homs, radicals) -> None:
    """Every map to a generator factors through the approximation, and the
    solutions of ``psi o f = 0`` in ``End(target)`` are radical."""
    comps = approx.components
    for j, g in enumerate(generators):
        if not homs[j]:
            continue
        through = []
        labels = []
        for idx, (k, b) in enumerate(comps):
            for gi, gmap in enumerate(cat.hom(generators[k], g, (keys[k], keys[j]))):
                through.append(cat.flatten(cat.compose(gmap, b)))
                labels.append((idx, k, gi))
        base = la.as_matrix(through) if through else None
        rank_through = la.rank(base) if base is not None else 0
        full = la.as_matrix((through or []) + [cat.flatten(h) for h in homs[j]])
        if la.rank(full) != rank_through:
            raise ArithmeticError("approximation property fails")
        if not through:
            continue
        # psi components into G_j with psi o f = 0 must be radical on G_j summands
        null = la.kernel(base.transpose())
        if null.shape[1] == 0:
            continue
        ends = cat.hom(g, g, (keys[j], keys[j]))
        unit = cat.unit_trace(g)
        for col in la.rows_of(null.transpose()):
            per_summand: dict[int, object] = {}
            for (idx, k, gi), c in zip(labels, col):
                if c and k == j:
                    per_summand[idx] = per_summand.get(idx, 0) + c * cat.trace(ends[gi]) / unit
            if any(v != 0 for v in per_summand.values()):
                raise ArithmeticError("approximation is not left minimal")


def minimal_left_approximation(
    m: QuiverRep,
    generators: Sequence[QuiverRep],
    keys: Sequence[Hashable] | None = None,
    category: ModuleCategory | None = None,
    radicals: Radicals | None = None,
) -> Approximation:
    """Minimal left ``add(generators)``-approximation in mod A.

    ``generators`` are pairwise non-isomorphic indecomposable representations.
    The target is ``None`` when ``Hom(M, G) = 0``.
    """
    cat = category or ModuleCategory()
    keys = list(keys) if keys is not None else [("gen", i) for i in range(len(generators))]
    rads = radicals or Radicals(cat)
    return minimal_left_approximation_generic(cat, m, generators, keys, rads)


# ---------------------------------------------------------------------------
# Decomposition into known indecomposables


@dataclass(frozen=True, eq=False)
class Decomposition:
    multiplicities: dict[Hashable, int]
    isomorphism: RepMap | None


def decompose(
    rep: QuiverRep,
    candidates: dict[Hashable, QuiverRep],
    category: ModuleCategory | None = None,
    radicals: Radicals | None = None,
) -> Decomposition:
    """Split ``rep`` into copies of the candidate indecomposables.

    The multiplicity of ``X`` is the rank of the residue pairing
    ``Hom(X, R) x Hom(R, X) -> End(X) / rad``.  The result is certified by an
    explicit isomorphism from the direct sum onto ``rep``; a mismatch raises
    :class:`DecompositionError`.
    """
    cat = category or ModuleCategory()
    mults: dict[Hashable, int] = {}
    pieces: list[QuiverRep] = []
    maps: list[RepMap] = []
    if rep.is_zero():
        return Decomposition({}, None)
    for key, x in candidates.items():
        if any(rep.dims[v] < x.dims[v] for v in range(len(rep.dims))):
            continue
        into = hom_basis(x, rep)
        if not into:
            continue
        outof = hom_basis(rep, x)
        if not outof:
            continue
        unit = la.QQ(x.total_dim)
        pairing = la.as_matrix(
            [[ModuleCategory.trace(compose(g, f)) / unit for f in into] for g in outof]
        )
        r = la.rank(pairing)
        if r == 0:
            continue
        mults[key] = r
        # pick r maps x -> rep whose pairing columns are independent
        red, pivots = pairing.to_sparse().rref()
        for p in pivots:
            pieces.append(x)
            maps.append(into[p])
    if not pieces:
        raise DecompositionError("no candidate indecomposable is a summand")
    total = direct_sum(pieces)
    iso = map_from_sum(total, maps, rep)
    if total.dims != rep.dims or any(la.rank(c) != c.shape[0] for c in iso.comps if c.shape[0]):
        raise DecompositionError("candidate summands do not exhaust the representation")
    return Decomposition(mults, iso)
