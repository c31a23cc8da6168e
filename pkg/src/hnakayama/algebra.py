"""Combinatorics of the higher Nakayama algebras A_l^d.

Vertices of the quiver are the weakly increasing d-tuples of ``os_l^d`` and the
indecomposable modules of the d-cluster tilting subcategory are indexed by the
(d+1)-tuples of ``os_l^{d+1}``.  Every set of tuples produced here is sorted in
colexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

Tup = tuple[int, ...]

__all__ = [
    "Algebra",
    "FirstEntryNotOne",
    "GrowthViolation",
    "KupischError",
    "KupischSeries",
    "Tup",
    "colex_key",
    "colex_sorted",
    "enumerate_os",
    "enumerate_os_bruteforce",
    "hom_dim",
    "in_os",
    "leads_to",
    "shift",
    "validate_kupisch",
]


class KupischError(ValueError):
    """Raised when an integer list is not a connected Kupisch series."""


class FirstEntryNotOne(KupischError):
    def __init__(self, first: int):
        super().__init__(f"first entry must be 1, got {first}")
        self.first = first


class GrowthViolation(KupischError):
    def __init__(self, index: int, value: int, previous: int):
        super().__init__(
            f"entry {index} is {value}; expected 2 <= l_{index} <= l_{index - 1} + 1 = {previous + 1}"
        )
        self.index = index
        self.value = value
        self.previous = previous


@dataclass(frozen=True)
class KupischSeries:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise KupischError("a Kupisch series needs at least one entry")
        if entries[0] != 1:
            raise FirstEntryNotOne(entries[0])
        for i in range(1, len(entries)):
            if not 2 <= entries[i] <= entries[i - 1] + 1:
                raise GrowthViolation(i, entries[i], entries[i - 1])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)


def validate_kupisch(entries: Iterable[int]) -> KupischSeries:
    return KupischSeries(tuple(entries))


def colex_key(t: Sequence[int]) -> Tup:
    return tuple(reversed(t))


def colex_sorted(tuples: Iterable[Sequence[int]]) -> list[Tup]:
    return sorted((tuple(t) for t in tuples), key=colex_key)


def in_os(kupisch: KupischSeries, t: Sequence[int]) -> bool:
    """Membership of an integer tuple in ``os_l^k`` for ``k = len(t)``."""
    if not t:
        return False
    n = kupisch.n
    if any(v < 0 or v >= n for v in t):
        return False
    if any(t[i] > t[i + 1] for i in range(len(t) - 1)):
        return False
    return t[-1] - t[0] + 1 <= kupisch[t[-1]]


def enumerate_os(kupisch: KupischSeries, k: int) -> list[Tup]:
    """All tuples of ``os_l^k`` in colexicographic order."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    out: list[Tup] = []
    for last in range(kupisch.n):
        low = last + 1 - kupisch[last]

        def grow(prefix: list[int], remaining: int) -> None:
            if remaining == 0:
                out.append(tuple(prefix) + (last,))
                return
            start = prefix[-1] if prefix else low
            for v in range(start, last + 1):
                prefix.append(v)
                grow(prefix, remaining - 1)
                prefix.pop()

        grow([], k - 1)
    return colex_sorted(out)


def enumerate_os_bruteforce(kupisch: KupischSeries, k: int) -> list[Tup]:
    """Filter all of ``{0..n-1}^k``; used to cross-check :func:`enumerate_os`."""
    return colex_sorted(t for t in product(range(kupisch.n), repeat=k) if in_os(kupisch, t))


def leads_to(x: Sequence[int], y: Sequence[int]) -> bool:
    """The interleaving relation ``x_0 <= y_0 <= x_1 <= y_1 <= ... <= x_d <= y_d``."""
    if len(x) != len(y):
        raise ValueError("tuples of different arity")
    for i in range(len(x)):
        if x[i] > y[i]:
            return False
        if i + 1 < len(x) and y[i] > x[i + 1]:
            return False
    return True


def hom_dim(x: Sequence[int], y: Sequence[int]) -> int:
    return 1 if leads_to(x, y) else 0


def shift(t: Sequence[int], s: int) -> Tup:
    return tuple(v + s for v in t)


@dataclass(frozen=True)
class Algebra:
    """The algebra A_l^d together with its quiver and indecomposables of M_l^d.

    ``arrows`` holds pairs ``(source, target)`` of vertex tuples where the source
    is the target plus a unit vector.  A representation assigns to each arrow a
    linear map from the space at the source to the space at the target, so the
    indecomposable projective ``P_y`` has top at ``y``.
    """

    kupisch: KupischSeries
    d: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not isinstance(self.kupisch, KupischSeries):
            object.__setattr__(self, "kupisch", validate_kupisch(self.kupisch))
        if int(self.d) < 1:
            raise ValueError("d must be at least 1")
        object.__setattr__(self, "d", int(self.d))

    @classmethod
    def from_kupisch(cls, kupisch: Iterable[int], d: int) -> "Algebra":
        return cls(validate_kupisch(kupisch), d)

    def to_json(self) -> dict:
        return {"kupisch": list(self.kupisch.entries), "d": self.d}

    @property
    def n(self) -> int:
        return self.kupisch.n

    @cached_property
    def vertices(self) -> list[Tup]:
        return enumerate_os(self.kupisch, self.d)

    @cached_property
    def indecs(self) -> list[Tup]:
        return enumerate_os(self.kupisch, self.d + 1)

    @cached_property
    def vertex_index(self) -> dict[Tup, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def indec_index(self) -> dict[Tup, int]:
        return {x: i for i, x in enumerate(self.indecs)}

    @cached_property
    def arrows(self) -> list[tuple[Tup, Tup]]:
        out = []
        vset = self.vertex_index
        for t in self.vertices:
            for i in range(self.d):
                s = t[:i] + (t[i] + 1,) + t[i + 1 :]
                if s in vset:
                    out.append((s, t))
        return sorted(out, key=lambda a: (colex_key(a[0]), colex_key(a[1])))

    @cached_property
    def arrow_index(self) -> list[tuple[int, int]]:
        """Arrows as ``(source index, target index)`` pairs, aligned with ``arrows``."""
        return [(self.vertex_index[s], self.vertex_index[t]) for s, t in self.arrows]

    def is_vertex(self, t: Sequence[int]) -> bool:
        return len(t) == self.d and in_os(self.kupisch, t)

    def is_indec(self, t: Sequence[int]) -> bool:
        return len(t) == self.d + 1 and in_os(self.kupisch, t)

    def top(self, x: Sequence[int]) -> Tup:
        """Vertex of the top of ``M_x``."""
        return tuple(x[1:])

    def is_projective(self, x: Sequence[int]) -> bool:
        return x[0] == x[-1] + 1 - self.kupisch[x[-1]]

    def is_injective(self, x: Sequence[int]) -> bool:
        """``M_x`` is injective iff ``x + (1,...,1)`` is not a non-projective indecomposable."""
        return self.tau_inverse(x) is None

    def projective_of(self, y: Sequence[int]) -> Tup:
        """The (d+1)-tuple of the indecomposable projective ``P_y``."""
        y = tuple(y)
        return (y[-1] + 1 - self.kupisch[y[-1]],) + y

    def projectivity(self, x: Sequence[int]) -> tuple[bool, Tup | None]:
        if self.is_projective(x):
            return True, self.top(x)
        return False, None

    @cached_property
    def projectives(self) -> list[Tup]:
        return [x for x in self.indecs if self.is_projective(x)]

    @cached_property
    def injectives(self) -> list[Tup]:
        return [x for x in self.indecs if self.is_injective(x)]

    def tau(self, x: Sequence[int]) -> Tup | None:
        """The higher translate ``tau_d``; ``None`` on projectives."""
        if self.is_projective(x):
            return None
        return shift(x, -1)

    def tau_inverse(self, x: Sequence[int]) -> Tup | None:
        """Inverse of ``tau_d``: ``x + (1,...,1)`` when that is a non-projective indecomposable."""
        y = shift(x, 1)
        if not in_os(self.kupisch, y) or self.is_projective(y):
            return None
        return y

    def stable_hom_dim(self, y: Sequence[int], w: Sequence[int]) -> int:
        """Dimension of Hom modulo maps factoring through injectives.

        The nonzero map ``M_y -> M_w`` factors through an injective exactly when
        some injective ``M_z`` has ``y ~> z ~> w``, since composites along
        ``~>`` chains are nonzero.
        """
        if not leads_to(y, w):
            return 0
        if any(leads_to(y, z) and leads_to(z, w) for z in self.injectives):
            return 0
        return 1

    def ext_d_dim(self, x: Sequence[int], y: Sequence[int]) -> int:
        """``dim Ext^d(M_x, M_y)`` through higher AR duality with stable Hom."""
        t = self.tau(x)
        return 0 if t is None else self.stable_hom_dim(y, t)

    def tau_d(self, x: Sequence[int], direction: str = "forward") -> Tup | None:
        if direction == "forward":
            return self.tau(x)
        if direction == "inverse":
            return self.tau_inverse(x)
        raise ValueError(f"unknown direction {direction!r}")

    def support(self, x: Sequence[int]) -> list[Tup]:
        """Vertices ``y`` with ``x_0 <= y_0 <= x_1 <= ... <= y_{d-1} <= x_d``."""
        return [
            y
            for y in self.vertices
            if all(x[i] <= y[i] <= x[i + 1] for i in range(self.d))
        ]

    def is_path_quiver(self) -> bool:
        """Whether the quiver is a single oriented line (classical Nakayama case)."""
        nv = len(self.vertices)
        if nv == 1:
            return True
        outdeg = [0] * nv
        indeg = [0] * nv
        for s, t in self.arrow_index:
            outdeg[s] += 1
            indeg[t] += 1
        if len(self.arrow_index) != nv - 1:
            return False
        return max(outdeg) <= 1 and max(indeg) <= 1

    def path_order(self) -> list[Tup]:
        """Vertices along the path ``v_0 <- v_1 <- ... <- v_m`` of a path quiver."""
        if not self.is_path_quiver():
            raise ValueError("quiver is not a path")
        nv = len(self.vertices)
        above = {t: s for s, t in self.arrow_index}
        sources = {s for s, _ in self.arrow_index}
        order = [next(i for i in range(nv) if i not in sources)]
        while order[-1] in above:
            order.append(above[order[-1]])
        return [self.vertices[i] for i in order]
