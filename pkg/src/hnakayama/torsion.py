"""d-torsion classes of M_l^d as closed sets of two Horn axioms.

T1: if ``x <= z`` componentwise with ``x_d = z_d`` and ``x`` is in the class, so is ``z``.
T2: if ``x ~> tau_d(z)`` (integer shift) and ``x, z`` are in the class, every
    ``y`` in ``os_l^{d+1}`` with ``y_i in {x_i, z_i}`` is in the class.

Sets of indecomposables are handled as bitmasks over the canonical (colex)
order of ``Algebra.indecs``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

from .algebra import Algebra, Tup, colex_sorted, in_os, leads_to, shift

__all__ = [
    "AxiomViolation",
    "ClosureSystem",
    "DTorsionClass",
    "TorsionLattice",
    "brute_force_classes",
    "check_axioms",
    "closure",
    "closure_system",
    "enumerate_classes",
    "is_split",
]


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    x: Tup
    z: Tup
    missing: Tup

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "x": list(self.x), "z": list(self.z), "missing": list(self.missing)}


@dataclass(frozen=True)
class DTorsionClass:
    algebra: Algebra
    members: tuple[Tup, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(colex_sorted(set(self.members))))

    def __contains__(self, x: object) -> bool:
        return tuple(x) in self.members_set  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Tup]:
        return iter(self.members)

    @cached_property
    def members_set(self) -> frozenset[Tup]:
        return frozenset(self.members)

    @property
    def functorially_finite(self) -> bool:
        return True

    def to_json(self) -> list[list[int]]:
        return [list(x) for x in self.members]


def _t2_span(alg: Algebra, x: Tup, z: Tup) -> list[Tup]:
    choices = [sorted({x[i], z[i]}) for i in range(len(x))]
    return [y for y in product(*choices) if in_os(alg.kupisch, y)]


class ClosureSystem:
    """The Horn rules of T1/T2 over bitmasks of ``algebra.indecs``."""

    def __init__(self, alg: Algebra):
        self.algebra = alg
        self.elements: list[Tup] = list(alg.indecs)
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        self.size = n
        self.full = (1 << n) - 1
        # single-premise rules from T1 as a successor mask per element
        self.t1: list[int] = [0] * n
        for i, x in enumerate(self.elements):
            for j, z in enumerate(self.elements):
                if i != j and x[-1] == z[-1] and all(a <= b for a, b in zip(x, z)):
                    self.t1[i] |= 1 << j
        # two-premise rules from T2
        self.t2: list[tuple[int, int]] = []
        for i, x in enumerate(self.elements):
            for j, z in enumerate(self.elements):
                if leads_to(x, shift(z, -1)):
                    concl = 0
                    for y in _t2_span(alg, x, z):
                        concl |= 1 << self.index[y]
                    self.t2.append(((1 << i) | (1 << j), concl))

    def mask(self, tuples: Iterable[Sequence[int]]) -> int:
        m = 0
        for t in tuples:
            t = tuple(t)
            if t not in self.index:
                raise ValueError(f"{t} is not an indecomposable of M")
            m |= 1 << self.index[t]
        return m

    def tuples(self, mask: int) -> list[Tup]:
        return [x for i, x in enumerate(self.elements) if mask >> i & 1]

    def close(self, mask: int) -> int:
        s = mask
        while True:
            before = s
            pending = s
            while pending:
                low = pending & -pending
                i = low.bit_length() - 1
                pending ^= low
                new = self.t1[i] & ~s
                if new:
                    s |= new
                    pending |= new
            for premise, concl in self.t2:
                if premise & s == premise and concl & ~s:
                    s |= concl
            if s == before:
                return s

    def is_closed(self, mask: int) -> bool:
        return self.close(mask) == mask

    def next_closure(self, mask: int) -> int | None:
        """The lectically next closed set after ``mask`` (Ganter's algorithm)."""
        for i in range(self.size - 1, -1, -1):
            bit = 1 << i
            if mask & bit:
                mask &= ~bit
                continue
            candidate = self.close(mask | bit)
            lower = bit - 1
            if candidate & lower == mask & lower:
                return candidate
        return None

    def iter_closed(self) -> Iterator[int]:
        current: int | None = self.close(0)
        while current is not None:
            yield current
            current = self.next_closure(current)


def closure_system(alg: Algebra) -> ClosureSystem:
    cache = alg._cache
    if "closure_system" not in cache:
        cache["closure_system"] = ClosureSystem(alg)
    return cache["closure_system"]


def check_axioms(alg: Algebra, members: Iterable[Sequence[int]]) -> AxiomViolation | None:
    """``None`` when the set satisfies T1 and T2, else the lexicographically first violation."""
    mem = {tuple(x) for x in members}
    for x in mem:
        if not alg.is_indec(x):
            raise ValueError(f"{x} is not an indecomposable of M")
    found: list[AxiomViolation] = []
    for x in sorted(mem):
        for z in sorted(alg.indecs):
            if z not in mem and x[-1] == z[-1] and all(a <= b for a, b in zip(x, z)):
                found.append(AxiomViolation("T1", x, z, z))
                break
    if found:
        return min(found, key=lambda v: (v.axiom, v.x, v.z, v.missing))
    for x in sorted(mem):
        for z in sorted(mem):
            if leads_to(x, shift(z, -1)):
                for y in sorted(_t2_span(alg, x, z)):
                    if y not in mem:
                        found.append(AxiomViolation("T2", x, z, y))
                        break
    if found:
        return min(found, key=lambda v: (v.axiom, v.x, v.z, v.missing))
    return None


def closure(alg: Algebra, members: Iterable[Sequence[int]]) -> DTorsionClass:
    cs = closure_system(alg)
    return DTorsionClass(alg, tuple(cs.tuples(cs.close(cs.mask(members)))))


@dataclass(frozen=True)
class TorsionLattice:
    algebra: Algebra
    nodes: tuple[DTorsionClass, ...]
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def index_of(self, members: Iterable[Sequence[int]]) -> int:
        key = frozenset(tuple(x) for x in members)
        for i, node in enumerate(self.nodes):
            if node.members_set == key:
                return i
        raise KeyError("not a node of the lattice")

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "nodes": [node.to_json() for node in self.nodes],
            "edges": [list(e) for e in self.edges],
        }


def hasse_edges(masks: Sequence[int]) -> list[tuple[int, int]]:
    """Cover relations ``(i, j)`` with ``masks[i]`` a maximal proper subset of ``masks[j]``."""
    edges = []
    for j, big in enumerate(masks):
        below = [i for i, small in enumerate(masks) if small != big and small & big == small]
        below.sort(key=lambda i: -bin(masks[i]).count("1"))
        maximal: list[int] = []
        for i in below:
            small = masks[i]
            if not any(masks[k] & small == small for k in maximal):
                maximal.append(i)
        edges.extend((i, j) for i in maximal)
    return sorted(edges)


def enumerate_classes(alg: Algebra) -> TorsionLattice:
    """All d-torsion classes in lectic order, with the Hasse diagram of inclusion."""
    cs = closure_system(alg)
    masks = list(cs.iter_closed())
    nodes = tuple(DTorsionClass(alg, tuple(cs.tuples(m))) for m in masks)
    return TorsionLattice(alg, nodes, tuple(hasse_edges(masks)))


def brute_force_classes(alg: Algebra) -> list[frozenset[Tup]]:
    """Every subset of indecomposables passing :func:`check_axioms` (exponential)."""
    elems = alg.indecs
    out = []
    for mask in range(1 << len(elems)):
        subset = [x for i, x in enumerate(elems) if mask >> i & 1]
        if check_axioms(alg, subset) is None:
            out.append(frozenset(subset))
    return out


def is_split(alg: Algebra, members: Iterable[Sequence[int]]) -> bool:
    """No nonzero map from a member to a non-member."""
    mem = {tuple(x) for x in members}
    return not any(leads_to(u, x) for u in mem for x in alg.indecs if x not in mem)
