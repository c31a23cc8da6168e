"""The invariant suite behind ``verify``: every combinatorial formula against the
representation oracle, plus the structural laws of lattices, pairs and complexes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import complexes as C
from . import reps as R
from . import tau_tilting as T
from . import tiny
from .algebra import Algebra, enumerate_os, enumerate_os_bruteforce, leads_to
from .torsion import brute_force_classes, check_axioms, closure, closure_system, enumerate_classes, is_split

__all__ = ["CheckResult", "run_checks", "CHECKS"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    skipped: str | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:10]],
            "skipped": self.skipped,
            "seconds": round(self.seconds, 3),
        }


class _Skip(Exception):
    pass


class _Ctx:
    """Shared per-algebra data so checks do not recompute the lattice."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.lattice = enumerate_classes(alg)
        self.pairs = [T.pair_of(node) for node in self.lattice.nodes]
        self.indec_reps = {x: R.realize_module(alg, x) for x in alg.indecs}
        self._res: dict = {}

    def resolution(self, x):
        if x not in self._res:
            self._res[x] = R.minimal_proj_resolution(self.indec_reps[x], self.alg.d + 1)
        return self._res[x]


def _os_bruteforce(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for k in (alg.d, alg.d + 1):
        if alg.n * k > 24:
            raise _Skip("n*k exceeds 24")
        out.checked += 1
        if enumerate_os(alg.kupisch, k) != enumerate_os_bruteforce(alg.kupisch, k):
            out.failures.append(f"arity {k}")


def _leads_to_laws(ctx: _Ctx, out: CheckResult) -> None:
    for x in ctx.alg.indecs:
        out.checked += 1
        if not leads_to(x, x):
            out.failures.append(("reflexive", x))
        for y in ctx.alg.indecs:
            if leads_to(x, y) and not all(a <= b for a, b in zip(x, y)):
                out.failures.append(("monotone", x, y))


def _tau_roundtrip(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for x in alg.indecs:
        out.checked += 1
        t = alg.tau(x)
        if t is not None and alg.tau_inverse(t) != x:
            out.failures.append(("tau then inverse", x))
        u = alg.tau_inverse(x)
        if u is not None and alg.tau(u) != x:
            out.failures.append(("inverse then tau", x))
    if len(alg.projectives) != len(alg.vertices):
        out.failures.append("projective count differs from vertex count")
    if len(alg.injectives) != len(alg.vertices):
        out.failures.append("injective count differs from vertex count")


def _hom_oracle(ctx: _Ctx, out: CheckResult) -> None:
    for x, rx in ctx.indec_reps.items():
        for y, ry in ctx.indec_reps.items():
            out.checked += 1
            if R.hom_dim(rx, ry) != (1 if leads_to(x, y) else 0):
                out.failures.append((x, y))


def _projective_injective_oracle(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    proj = [R.projective_rep(alg, v) for v in alg.vertices]
    inj = [R.injective_rep(alg, v) for v in alg.vertices]
    for x, rx in ctx.indec_reps.items():
        out.checked += 1
        is_p = any(p.dims == rx.dims and R.hom_dim(p, rx) == 1 and R.hom_dim(rx, p) == 1 for p in proj)
        is_i = any(i.dims == rx.dims and R.hom_dim(i, rx) == 1 and R.hom_dim(rx, i) == 1 for i in inj)
        if is_p != alg.is_projective(x):
            out.failures.append(("projective", x))
        if is_i != alg.is_injective(x):
            out.failures.append(("injective", x))
        if not R.is_module(rx):
            out.failures.append(("relations", x))


def _ar_duality(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for x in alg.indecs:
        res = ctx.resolution(x)
        for y in alg.indecs:
            out.checked += 1
            ext = R.ext_dim(ctx.indec_reps[x], ctx.indec_reps[y], alg.d, res)
            expected = alg.ext_d_dim(x, y)
            if ext != expected:
                out.failures.append((x, y, ext, expected))


def _composition_law(ctx: _Ctx, out: CheckResult) -> None:
    """Composites of nonzero maps along a leads-to chain are nonzero exactly when the ends lead to each other."""
    maps = {}
    for x, rx in ctx.indec_reps.items():
        for y, ry in ctx.indec_reps.items():
            basis = R.hom_basis(rx, ry)
            if basis:
                maps[x, y] = basis[0]
    for (x, y), f in maps.items():
        for z in ctx.alg.indecs:
            g = maps.get((y, z))
            if g is None:
                continue
            out.checked += 1
            if R.compose(g, f).is_zero() == leads_to(x, z):
                out.failures.append((x, y, z))


def _cluster_tilting_rigidity(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for x in alg.indecs:
        res = ctx.resolution(x)
        for y in alg.indecs:
            for i in range(1, alg.d):
                out.checked += 1
                if R.ext_dim(ctx.indec_reps[x], ctx.indec_reps[y], i, res):
                    out.failures.append((x, y, i))


def _factorize_dims(ctx: _Ctx, out: CheckResult) -> None:
    for x, rx in ctx.indec_reps.items():
        for y, ry in ctx.indec_reps.items():
            for f in R.hom_basis(rx, ry):
                out.checked += 1
                fac = R.factorize(f)
                for w in range(len(rx.dims)):
                    if fac.kernel.dims[w] - rx.dims[w] + fac.image.dims[w] != 0:
                        out.failures.append(("kernel", x, y))
                    if fac.image.dims[w] - ry.dims[w] + fac.cokernel.dims[w] != 0:
                        out.failures.append(("cokernel", x, y))


def _approximation_of_members(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    gens = [ctx.indec_reps[x] for x in alg.indecs]
    for i, x in enumerate(alg.indecs):
        out.checked += 1
        approx = R.minimal_left_approximation(ctx.indec_reps[x], gens, keys=list(alg.indecs))
        if approx.multiplicities[i] != 1 or sum(approx.multiplicities) != 1:
            out.failures.append(x)


def _projective_resolution_matches_presentation(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for x in alg.indecs:
        out.checked += 1
        res = R.minimal_proj_resolution(ctx.indec_reps[x], alg.d)
        cx = C.min_presentation(alg, x)
        for i in range(alg.d + 1):
            got = tuple(sorted(alg.vertices[v] for v in res.labels[i])) if i < len(res.labels) else ()
            if got != cx.multisets()[-i]:
                out.failures.append((x, i))
        if not cx.is_minimal() or not cx.is_complex():
            out.failures.append((x, "not minimal"))
        dec = R.decompose(C.h0(cx), {y: ctx.indec_reps[y] for y in alg.indecs})
        if dec.multiplicities != {x: 1}:
            out.failures.append((x, "H0"))


def _closure_laws(ctx: _Ctx, out: CheckResult) -> None:
    cs = closure_system(ctx.alg)
    masks = [cs.mask(node.members) for node in ctx.lattice.nodes]
    if len(masks) > 200:
        raise _Skip("lattice larger than 200")
    mset = set(masks)
    if 0 not in mset or cs.full not in mset:
        out.failures.append("top or bottom missing")
    for a in masks:
        for b in masks:
            out.checked += 1
            if a & b not in mset:
                out.failures.append((cs.tuples(a), cs.tuples(b)))
    for node in ctx.lattice.nodes:
        if check_axioms(ctx.alg, node.members) is not None:
            out.failures.append(("axioms", node.members))
        if closure(ctx.alg, node.members).members != node.members:
            out.failures.append(("closure", node.members))


def _brute_force_classes(ctx: _Ctx, out: CheckResult) -> None:
    if len(ctx.alg.indecs) > 16:
        raise _Skip("more than 16 indecomposables")
    brute = set(brute_force_classes(ctx.alg))
    found = {node.members_set for node in ctx.lattice.nodes}
    out.checked = len(brute)
    if brute != found:
        out.failures.append(("symmetric difference", len(brute ^ found)))


def _right_d_exact_closure(ctx: _Ctx, out: CheckResult) -> None:
    """Every minimal d-cokernel of a map into a class member has its terms in the class."""
    alg = ctx.alg
    if len(alg.indecs) > 10:
        raise _Skip("more than 10 indecomposables")
    quotients = {}
    for x, rx in ctx.indec_reps.items():
        for y, ry in ctx.indec_reps.items():
            maps = R.hom_basis(rx, ry) + [R.zero_map(rx, ry)]
            for f in maps:
                terms = T.d_cokernel(alg, f)
                quotients.setdefault(y, []).append({z for t in terms for z in t})
    for node in ctx.lattice.nodes:
        for y in node.members:
            for spots in quotients[y]:
                out.checked += 1
                if not spots <= node.members_set:
                    out.failures.append((node.members, y, sorted(spots)))


def _split_criterion(ctx: _Ctx, out: CheckResult) -> None:
    for node in ctx.lattice.nodes:
        out.checked += 1
        mem = node.members_set
        by_reps = not any(
            R.hom_dim(ctx.indec_reps[u], ctx.indec_reps[x])
            for u in mem
            for x in ctx.alg.indecs
            if x not in mem
        )
        if by_reps != is_split(ctx.alg, node.members):
            out.failures.append(node.members)


def _count_law(ctx: _Ctx, out: CheckResult) -> None:
    nv = len(ctx.alg.vertices)
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        out.checked += 1
        if pair.size != nv:
            out.failures.append(node.members)


def _coresolution_oracle(ctx: _Ctx, out: CheckResult) -> None:
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        out.checked += 1
        cores = T.coresolve_regular(node)
        if cores.summands() != list(pair.module_part):
            out.failures.append((node.members, cores.summands(), pair.module_part))
        if len(cores) > ctx.alg.d + 1:
            out.failures.append((node.members, "too long"))


def _ext_d_projectivity(ctx: _Ctx, out: CheckResult) -> None:
    d = ctx.alg.d
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        for u in pair.module_part:
            res = ctx.resolution(u)
            for v in node.members:
                out.checked += 1
                if R.ext_dim(ctx.indec_reps[u], ctx.indec_reps[v], d, res):
                    out.failures.append((node.members, u, v))


def _tilting_consequences(ctx: _Ctx, out: CheckResult) -> None:
    d = ctx.alg.d
    for pair in ctx.pairs:
        for u in pair.module_part:
            res = ctx.resolution(u)
            for v in pair.module_part:
                for i in range(1, d + 1):
                    out.checked += 1
                    if R.ext_dim(ctx.indec_reps[u], ctx.indec_reps[v], i, res):
                        out.failures.append((pair.module_part, u, v, i))


def _pair_injective_and_fac(ctx: _Ctx, out: CheckResult) -> None:
    seen = set()
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        out.checked += 1
        key = (pair.module_part, pair.proj_part)
        if key in seen:
            out.failures.append(("duplicate pair", node.members))
        seen.add(key)
        if T.fac_intersect(ctx.alg, pair.module_part) != list(node.members):
            out.failures.append(("fac", node.members))


def _maximality(ctx: _Ctx, out: CheckResult) -> None:
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        out.checked += 1
        cert = T.is_maximal_pair(ctx.alg, pair.module_part, pair.proj_part)
        if not cert:
            out.failures.append((node.members, cert.condition, cert.witness))


def _non_surjectivity(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    if not (list(alg.kupisch) == [1, 2] and alg.d == 2):
        raise _Skip("only for l = (1, 2), d = 2")
    m, p = [(0, 0, 0), (0, 0, 1)], [(0, 1, 1)]
    out.checked = 1
    if not T.is_rigid_pair(alg, m, p) or not T.is_maximal_pair(alg, m, p):
        out.failures.append("pair is not maximal rigid")
    if any(list(pr.module_part) == m and list(pr.proj_part) == p for pr in ctx.pairs):
        out.failures.append("pair lies in the image")


def _slices(ctx: _Ctx, out: CheckResult) -> None:
    if len(ctx.alg.indecs) > 24:
        raise _Skip("more than 24 indecomposables")
    for s in T.enumerate_slices(ctx.alg):
        out.checked += 1
        cert = T.slice_certificate(ctx.alg, s)
        if not cert.tilting_consequences:
            out.failures.append((s, cert.to_json()))


def _presentations(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for x in alg.indecs:
        out.checked += 1
        cx = C.min_presentation(alg, x)
        if not (cx.is_complex() and cx.is_minimal() and C.in_P_d_M(cx)):
            out.failures.append(x)


def _silting(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    for node, pair in zip(ctx.lattice.nodes, ctx.pairs):
        out.checked += 1
        total = C.assemble(alg, pair.module_part, pair.proj_part).total
        if not total.is_complex() or not C.in_P_d_M(total):
            out.failures.append((node.members, "not in P_d(M)"))
        try:
            cert = C.is_silting(alg, node.members, pair.module_part, pair.proj_part)
        except C.WitnessNotFound as exc:
            out.failures.append((node.members, f"witness: {exc}"))
            continue
        if not (cert.silting and cert.count_matches):
            out.failures.append((node.members, cert.to_json()))


def _homotopy_ext(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    pres = {x: C.min_presentation(alg, x) for x in alg.indecs}
    for x in alg.indecs:
        res = ctx.resolution(x)
        for y in alg.indecs:
            for i in range(1, alg.d):
                out.checked += 1
                hk = C.hom_K(pres[x], pres[y], i).dimension
                ext = R.ext_dim(ctx.indec_reps[x], ctx.indec_reps[y], i, res)
                if hk != ext:
                    out.failures.append((x, y, i, hk, ext))
    # stalk P[d] against presentations shifted by d gives Hom(P, M)
    for v in range(len(alg.vertices)):
        p = C.stalk(alg, [v], -alg.d)
        proj = R.projective_rep(alg, alg.vertices[v])
        for x in alg.indecs:
            out.checked += 1
            if C.hom_K(p, pres[x], alg.d).dimension != R.hom_dim(proj, ctx.indec_reps[x]):
                out.failures.append(("stalk", alg.vertices[v], x))


def _tiny_bridge(ctx: _Ctx, out: CheckResult) -> None:
    alg = ctx.alg
    if not alg.is_path_quiver():
        raise _Skip("quiver is not a path")
    model = tiny.tiny_model(alg)
    if len(model.intervals) > 16:
        raise _Skip("more than 16 uniserial modules")
    for node in ctx.lattice.nodes:
        out.checked += 1
        t = tiny.minimal_containing(alg, node.members)
        if tiny.restrict_to_M(alg, t) != list(node.members):
            out.failures.append(("restriction", node.members))
        if not tiny.check_induces(alg, t):
            out.failures.append(("induces", node.members))
    for t in tiny.classical_torsion_tiny(alg):
        out.checked += 1
        mask = model.mask(t)
        if not (model.is_quotient_closed(mask) and model.is_extension_closed(mask)):
            out.failures.append(("not a torsion class", t))
        if bool(tiny.check_induces(alg, t)) != bool(tiny.induces_by_definition(alg, t)):
            out.failures.append(("criterion disagrees with definition", t))


CHECKS: list[tuple[str, Callable[[_Ctx, CheckResult], None]]] = [
    ("os enumeration matches brute force", _os_bruteforce),
    ("leads-to reflexive and monotone", _leads_to_laws),
    ("tau_d round trips and counts", _tau_roundtrip),
    ("Hom formula matches representations", _hom_oracle),
    ("projectivity and injectivity match representations", _projective_injective_oracle),
    ("composition along leads-to chains", _composition_law),
    ("Ext^d matches higher AR duality", _ar_duality),
    ("Ext^i vanishes inside M for 0 < i < d", _cluster_tilting_rigidity),
    ("factorization dimensions", _factorize_dims),
    ("approximation of a generator is the identity", _approximation_of_members),
    ("presentation formula matches projective resolution", _projective_resolution_matches_presentation),
    ("closure system laws", _closure_laws),
    ("NextClosure matches brute force", _brute_force_classes),
    ("classes closed under d-quotients", _right_d_exact_closure),
    ("split criterion matches Hom data", _split_criterion),
    ("pair count law", _count_law),
    ("coresolution summands equal I1", _coresolution_oracle),
    ("I1 is Ext^d-projective", _ext_d_projectivity),
    ("Ext^i(M_U, M_U) vanishes for 0 < i <= d", _tilting_consequences),
    ("pairs are distinct and Fac recovers classes", _pair_injective_and_fac),
    ("pairs are maximal tau_d-rigid", _maximality),
    ("non-surjectivity witness", _non_surjectivity),
    ("slices give tilting consequences", _slices),
    ("presentations are minimal and lie in P_d(M)", _presentations),
    ("assembled complexes are silting", _silting),
    ("homotopy Hom matches Ext", _homotopy_ext),
    ("classical torsion bridge", _tiny_bridge),
]


def run_checks(alg: Algebra, names: list[str] | None = None) -> list[CheckResult]:
    ctx = _Ctx(alg)
    results = []
    for name, fn in CHECKS:
        if names is not None and name not in names:
            continue
        res = CheckResult(name, True)
        start = time.perf_counter()
        try:
            fn(ctx, res)
        except _Skip as skip:
            res.skipped = str(skip)
        res.seconds = time.perf_counter() - start
        res.passed = not res.failures
        results.append(res)
    return results
