"""Maximal tau_d-rigid pairs of d-torsion classes, U-coresolutions, d-APR
tilting and slices.

The pair of a class ``I`` is given combinatorially by ``I1`` (module part) and
``I2`` (projective part).  :func:`coresolve` recomputes the module part with
explicit representations and minimal approximations, independently of those
formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from . import linalg as la
from . import reps as R
from .algebra import Algebra, Tup, colex_sorted, leads_to, shift
from .reps import QuiverRep, RepMap
from .torsion import DTorsionClass, check_axioms

__all__ = [
    "Coresolution",
    "IsInjective",
    "MaximalityCertificate",
    "NotSimpleProjective",
    "ResolutionTooLong",
    "SliceCertificate",
    "TauRigidPair",
    "coresolve",
    "d_cokernel",
    "enumerate_slices",
    "ext_d_projective_set",
    "fac_intersect",
    "is_maximal_pair",
    "is_rigid_pair",
    "is_slice",
    "pair_of",
    "path_class",
    "slice_certificate",
    "support_projective_set",
    "weak_d_APR",
]


class ResolutionTooLong(RuntimeError):
    """A U-coresolution did not terminate after d + 1 approximations."""


class NotSimpleProjective(ValueError):
    pass


class IsInjective(ValueError):
    pass


def _members(x: Iterable[Sequence[int]]) -> list[Tup]:
    return colex_sorted({tuple(t) for t in x})


def ext_d_projective_set(alg: Algebra, members: Iterable[Sequence[int]]) -> list[Tup]:
    """``I1``: members that are projective or admit no ``y ~> tau_d(x)`` inside the class."""
    mem = _members(members)
    out = []
    for x in mem:
        if alg.is_projective(x) or not any(leads_to(y, shift(x, -1)) for y in mem):
            out.append(x)
    return out


def support_projective_set(alg: Algebra, members: Iterable[Sequence[int]]) -> list[Tup]:
    """``I2``: projectives ``x`` with no ``x ~> y`` for any member ``y``."""
    mem = _members(members)
    return [p for p in alg.projectives if not any(leads_to(p, y) for y in mem)]


@dataclass(frozen=True)
class TauRigidPair:
    algebra: Algebra
    module_part: tuple[Tup, ...]
    proj_part: tuple[Tup, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "module_part", tuple(_members(self.module_part)))
        object.__setattr__(self, "proj_part", tuple(_members(self.proj_part)))

    @property
    def size(self) -> int:
        return len(self.module_part) + len(self.proj_part)

    def to_json(self) -> dict:
        return {
            "module_part": [list(x) for x in self.module_part],
            "proj_part": [list(x) for x in self.proj_part],
        }


def is_rigid_pair(alg: Algebra, module_part: Iterable[Sequence[int]], proj_part: Iterable[Sequence[int]]) -> bool:
    """``Hom(M, tau_d M) = 0`` and ``Hom(P, M) = 0`` on indecomposables."""
    mods = _members(module_part)
    projs = _members(proj_part)
    for m2 in mods:
        if alg.is_projective(m2):
            continue
        t = shift(m2, -1)
        if any(leads_to(m, t) for m in mods):
            return False
    return not any(leads_to(p, m) for p in projs for m in mods)


def pair_of(torsion_class: DTorsionClass) -> TauRigidPair:
    """The pair ``(I1, I2)`` with its defining invariants asserted."""
    alg = torsion_class.algebra
    members = list(torsion_class.members)
    pair = TauRigidPair(alg, tuple(ext_d_projective_set(alg, members)), tuple(support_projective_set(alg, members)))
    if not is_rigid_pair(alg, pair.module_part, pair.proj_part):
        raise ArithmeticError(f"pair of {members} is not tau_d-rigid")
    if pair.size != len(alg.vertices):
        raise ArithmeticError(f"pair of {members} has {pair.size} summands, expected {len(alg.vertices)}")
    return pair


@dataclass(frozen=True)
class MaximalityCertificate:
    maximal: bool
    condition: str | None = None
    witness: Tup | None = None

    def __bool__(self) -> bool:
        return self.maximal

    def to_json(self) -> dict:
        return {
            "maximal": self.maximal,
            "condition": self.condition,
            "witness": list(self.witness) if self.witness else None,
        }


def is_maximal_pair(alg: Algebra, module_part: Iterable[Sequence[int]], proj_part: Iterable[Sequence[int]]) -> MaximalityCertificate:
    """Check both biconditionals of maximality over every indecomposable.

    (i)  ``N in add M`` iff ``Hom(M, tau N) = Hom(N, tau M) = Hom(P, N) = 0``;
    (ii) ``Q in add P`` iff ``Hom(Q, M) = 0`` for indecomposable projectives ``Q``.
    """
    mods = _members(module_part)
    projs = _members(proj_part)
    mset = set(mods)
    pset = set(projs)
    for p in projs:
        if not alg.is_projective(p):
            raise ValueError(f"{p} is not projective")

    def hom_into_tau(src: Sequence[Tup], target: Tup) -> bool:
        if alg.is_projective(target):
            return False
        t = shift(target, -1)
        return any(leads_to(s, t) for s in src)

    for q in alg.projectives:
        if (not any(leads_to(q, m) for m in mods)) != (q in pset):
            return MaximalityCertificate(False, "ii", q)
    for n in alg.indecs:
        conditions = (
            not hom_into_tau(mods, n)
            and not any(hom_into_tau([n], m) for m in mods)
            and not any(leads_to(p, n) for p in projs)
        )
        if conditions != (n in mset):
            return MaximalityCertificate(False, "i", n)
    return MaximalityCertificate(True)


# ---------------------------------------------------------------------------
# U-coresolutions


@dataclass(frozen=True, eq=False)
class Coresolution:
    """``M -> U_0 -> U_1 -> ... -> U_k -> 0`` from iterated minimal left approximations.

    ``maps[0]`` is ``M -> U_0``; ``maps[i]`` is ``U_{i-1} -> U_i``.
    ``targets[i]`` maps each member tuple to its multiplicity in ``U_i``.
    """

    source: QuiverRep
    targets: tuple[dict[Tup, int], ...]
    objects: tuple[QuiverRep, ...]
    maps: tuple[RepMap, ...]
    kernel: QuiverRep

    def summands(self) -> list[Tup]:
        return _members(x for t in self.targets for x in t)

    def __len__(self) -> int:
        return len(self.targets)

    def to_json(self) -> dict:
        return {
            "targets": [
                [{"tuple": list(x), "multiplicity": m} for x, m in sorted(t.items(), key=lambda kv: tuple(reversed(kv[0])))]
                for t in self.targets
            ],
            "kernel_dims": list(self.kernel.dims),
        }


def _module_category(alg: Algebra) -> tuple[R.ModuleCategory, R.Radicals]:
    cache = alg._cache
    if "module_category" not in cache:
        cat = R.ModuleCategory()
        cache["module_category"] = (cat, R.Radicals(cat))
    return cache["module_category"]


def _indec_rep(alg: Algebra, x: Tup) -> QuiverRep:
    cache = alg._cache.setdefault("indec_reps", {})
    if x not in cache:
        cache[x] = R.realize_module(alg, x)
    return cache[x]


def regular_rep(alg: Algebra) -> QuiverRep:
    cache = alg._cache
    if "regular_rep" not in cache:
        cache["regular_rep"] = R.direct_sum([R.projective_rep(alg, v) for v in alg.vertices])
    return cache["regular_rep"]


def coresolve(
    alg: Algebra,
    module: QuiverRep,
    members: Iterable[Sequence[int]],
    source_key: Hashable | None = None,
) -> Coresolution:
    """Minimal ``add(U)``-coresolution of ``module`` for ``U`` spanned by ``members``.

    Exactness at every target and surjectivity onto the last one are checked
    with explicit ranks; more than ``d + 1`` targets raises :class:`ResolutionTooLong`.
    """
    gens_keys = _members(members)
    gens = [_indec_rep(alg, x) for x in gens_keys]
    cat, rads = _module_category(alg)
    current = module
    key = source_key
    targets: list[dict[Tup, int]] = []
    objects: list[QuiverRep] = []
    maps: list[RepMap] = []
    kernel = None
    for step in range(alg.d + 2):
        if current.is_zero():
            break
        if step == alg.d + 1:
            raise ResolutionTooLong("coresolution exceeds d + 1 terms")
        approx = R.minimal_left_approximation_generic(cat, current, gens, gens_keys, rads, source_key=key)
        if approx.morphism is None:
            if step == 0:
                kernel = module
            break
        counts: dict[Tup, int] = {}
        for j, _ in approx.components:
            counts[gens_keys[j]] = counts.get(gens_keys[j], 0) + 1
        fac = R.factorize(approx.morphism)
        if step == 0:
            kernel = fac.kernel
            maps.append(approx.morphism)
        else:
            if not fac.kernel.is_zero():
                raise ArithmeticError("approximation of a cokernel is not injective")
            maps.append(R.compose(approx.morphism, previous_projection))
        targets.append(counts)
        objects.append(approx.target)
        previous_projection = fac.cokernel_projection
        current = fac.cokernel
        key = None
    if kernel is None:
        kernel = module
    res = Coresolution(module, tuple(targets), tuple(objects), tuple(maps), kernel)
    _check_coresolution_exact(res)
    return res


def _check_coresolution_exact(res: Coresolution) -> None:
    maps = res.maps
    objs = res.objects
    nv = len(res.source.dims)
    for k in range(len(maps) - 1):
        if not R.compose(maps[k + 1], maps[k]).is_zero():
            raise ArithmeticError("coresolution is not a complex")
    for k, obj in enumerate(objs):
        for w in range(nv):
            incoming = la.rank(maps[k].comps[w])
            outgoing = la.rank(maps[k + 1].comps[w]) if k + 1 < len(maps) else 0
            if incoming + outgoing != obj.dims[w]:
                raise ArithmeticError("coresolution is not exact")


def coresolve_regular(torsion_class: DTorsionClass) -> Coresolution:
    alg = torsion_class.algebra
    return coresolve(alg, regular_rep(alg), torsion_class.members, source_key=("regular",))


# ---------------------------------------------------------------------------
# Fac intersections, d-cokernels, d-APR


def fac_intersect(alg: Algebra, generators: Iterable[Sequence[int]]) -> list[Tup]:
    """Indecomposables ``M_y`` that are quotients of a module in ``add(generators)``.

    ``M_y`` is in ``Fac`` iff the sum of all maps from the generators onto it is surjective.
    """
    gens = [_indec_rep(alg, x) for x in _members(generators)]
    cat, _ = _module_category(alg)
    gen_keys = _members(generators)
    out = []
    for y in alg.indecs:
        target = _indec_rep(alg, y)
        maps = [h for g, k in zip(gens, gen_keys) for h in cat.hom(g, target, (k, y))]
        if not maps:
            continue
        total = R.direct_sum([h.source for h in maps])
        image = R.factorize(R.map_from_sum(total, maps, target)).image
        if image.dims == target.dims:
            out.append(y)
    return out


def d_cokernel(alg: Algebra, f: RepMap) -> list[dict[Tup, int]]:
    """Minimal d-cokernel ``Y -> C_1 -> ... -> C_d -> 0`` of ``f: X -> Y`` inside M.

    ``C_1`` is the minimal left M-approximation of ``coker f``; each later term
    approximates the cokernel of the previous map.  These approximations are
    injective since M contains the injective modules.  Terms are returned as
    multiplicities of indecomposables.
    """
    gens_keys = list(alg.indecs)
    gens = [_indec_rep(alg, x) for x in gens_keys]
    cat, rads = _module_category(alg)
    current = R.factorize(f).cokernel
    terms: list[dict[Tup, int]] = []
    for _ in range(alg.d):
        if current.is_zero():
            break
        approx = R.minimal_left_approximation_generic(cat, current, gens, gens_keys, rads)
        counts: dict[Tup, int] = {}
        for j, _h in approx.components:
            counts[gens_keys[j]] = counts.get(gens_keys[j], 0) + 1
        terms.append(counts)
        fac = R.factorize(approx.morphism)
        if not fac.kernel.is_zero():
            raise ArithmeticError("M-approximation is not injective")
        current = fac.cokernel
    if not current.is_zero():
        raise ArithmeticError("d-cokernel did not terminate inside M")
    return terms


def weak_d_APR(alg: Algebra, p: Sequence[int]) -> list[Tup]:
    """``tau_d^- P`` together with every other indecomposable projective."""
    p = tuple(p)
    if not alg.is_indec(p) or not alg.is_projective(p):
        raise NotSimpleProjective(f"{p} is not an indecomposable projective")
    if sum(R.realize_module(alg, p).dims) != 1:
        raise NotSimpleProjective(f"{p} is not simple")
    up = alg.tau_inverse(p)
    if up is None:
        raise IsInjective(f"{p} is injective")
    return _members([up] + [q for q in alg.projectives if q != p])


# ---------------------------------------------------------------------------
# slices


def _reach(alg: Algebra) -> tuple[list[int], list[int]]:
    """Bitmasks of indecomposables reachable from / reaching each one by nonzero maps."""
    cache = alg._cache
    if "reach" in cache:
        return cache["reach"]
    elems = alg.indecs
    n = len(elems)
    succ = [0] * n
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if leads_to(x, y):
                succ[i] |= 1 << j
    reach = list(succ)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = reach[i]
            m = acc
            while m:
                low = m & -m
                acc |= reach[low.bit_length() - 1]
                m ^= low
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    coreach = [0] * n
    for i in range(n):
        for j in range(n):
            if reach[i] >> j & 1:
                coreach[j] |= 1 << i
    cache["reach"] = (reach, coreach)
    return reach, coreach


def path_class(alg: Algebra, s: Iterable[Sequence[int]]) -> list[Tup]:
    """Indecomposables reached by a path of nonzero maps from a member of ``s``."""
    reach, _ = _reach(alg)
    idx = alg.indec_index
    mask = 0
    for x in s:
        mask |= reach[idx[tuple(x)]]
    return [x for i, x in enumerate(alg.indecs) if mask >> i & 1]


def is_slice(alg: Algebra, s: Iterable[Sequence[int]]) -> bool:
    mem = set(_members(s))
    idx = alg.indec_index
    for x in mem:
        if x not in idx:
            raise ValueError(f"{x} is not an indecomposable of M")
    # (1) every injective meets S along its tau_d-orbit
    for inj in alg.injectives:
        x: Tup | None = inj
        hit = False
        for _ in range(len(alg.indecs) + 1):
            if x is None:
                break
            if x in mem:
                hit = True
                break
            x = alg.tau(x)
        if not hit:
            return False
    # (2) never both x and tau_d x
    for x in mem:
        t = alg.tau(x)
        if t is not None and t in mem:
            return False
    # (3) path convexity
    reach, coreach = _reach(alg)
    mask = 0
    for x in mem:
        mask |= 1 << idx[x]
    down = 0
    up = 0
    for x in mem:
        down |= reach[idx[x]]
        up |= coreach[idx[x]]
    return (down & up) & ~mask == 0


def _orbits(alg: Algebra) -> list[list[Tup]]:
    """tau_d-orbits, each listed from its projective end upwards."""
    seen: set[Tup] = set()
    out = []
    for x in alg.indecs:
        if x in seen:
            continue
        while alg.tau(x) is not None:
            x = alg.tau(x)
        orbit = []
        y: Tup | None = x
        while y is not None:
            orbit.append(y)
            seen.add(y)
            y = alg.tau_inverse(y)
        out.append(orbit)
    return out


def enumerate_slices(alg: Algebra, limit: int = 24) -> list[tuple[Tup, ...]]:
    """Every slice, by search over subsets with no two tau_d-neighbours.

    Refuses algebras with more than ``limit`` indecomposables.
    """
    if len(alg.indecs) > limit:
        raise ValueError(f"{len(alg.indecs)} indecomposables exceed the search limit {limit}")
    orbit_choices = []
    for orbit in _orbits(alg):
        choices: list[list[Tup]] = []
        n = len(orbit)
        for mask in range(1 << n):
            if mask & (mask >> 1):
                continue
            choices.append([orbit[i] for i in range(n) if mask >> i & 1])
        orbit_choices.append(choices)
    out = []

    def walk(k: int, acc: list[Tup]) -> None:
        if k == len(orbit_choices):
            if is_slice(alg, acc):
                out.append(tuple(_members(acc)))
            return
        for c in orbit_choices[k]:
            walk(k + 1, acc + c)

    walk(0, [])
    return sorted(out, key=lambda s: (len(s), [tuple(reversed(x)) for x in s]))


@dataclass(frozen=True, eq=False)
class SliceCertificate:
    slice: bool
    rigid: bool
    ext_vanishing: bool
    torsion_class: tuple[Tup, ...]
    class_valid: bool
    faithful: bool
    summands_in_slice: bool

    @property
    def tilting_consequences(self) -> bool:
        return all((self.slice, self.rigid, self.ext_vanishing, self.class_valid, self.faithful, self.summands_in_slice))

    def to_json(self) -> dict:
        return {
            "slice": self.slice,
            "rigid": self.rigid,
            "ext_vanishing": self.ext_vanishing,
            "class": [list(x) for x in self.torsion_class],
            "class_valid": self.class_valid,
            "faithful": self.faithful,
            "summands_in_slice": self.summands_in_slice,
        }


def slice_certificate(alg: Algebra, s: Iterable[Sequence[int]]) -> SliceCertificate:
    """Checkable consequences of a slice being d-tilting.

    ``S`` is tau_d-rigid, ``Ext^i(S, S) = 0`` for ``i = 1..d``, the class of
    modules reached from ``S`` by paths is a d-torsion class, and the
    coresolution of ``A`` by that class is injective with summands in ``S``.
    """
    mem = _members(s)
    ok = is_slice(alg, mem)
    rigid = is_rigid_pair(alg, mem, [])
    reps_ = [_indec_rep(alg, x) for x in mem]
    ext_ok = True
    for x, rx in zip(mem, reps_):
        res = R.minimal_proj_resolution(rx, alg.d + 1)
        for ry in reps_:
            if any(R.ext_dim(rx, ry, i, res) for i in range(1, alg.d + 1)):
                ext_ok = False
    cls = path_class(alg, mem)
    valid = check_axioms(alg, cls) is None
    cores = coresolve(alg, regular_rep(alg), cls, source_key=("regular",))
    faithful = cores.kernel.is_zero()
    inside = set(cores.summands()) <= set(mem)
    return SliceCertificate(ok, rigid, ext_ok, tuple(cls), valid, faithful, inside)
