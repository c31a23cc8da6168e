"""Exact rational matrix helpers built on sympy's ``DomainMatrix`` over QQ."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = DomainMatrix

__all__ = [
    "Matrix",
    "QQ",
    "as_matrix",
    "block_diag",
    "column",
    "columns",
    "entry",
    "eye",
    "hstack",
    "inverse",
    "is_zero",
    "kernel",
    "mul",
    "rank",
    "rows_of",
    "select_columns",
    "select_rows",
    "solve",
    "sparse",
    "vstack",
    "zeros",
]


def _q(value) -> object:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


def zeros(nrows: int, ncols: int) -> Matrix:
    return DomainMatrix.zeros((nrows, ncols), QQ)


def eye(n: int) -> Matrix:
    return DomainMatrix.eye(n, QQ) if n else zeros(0, 0)


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Build a matrix from nested rows of ints, Fractions or QQ elements."""
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return zeros(nrows, ncols)
    return DomainMatrix([[_q(v) for v in row] for row in rows], (nrows, ncols), QQ)


def sparse(entries: dict[tuple[int, int], object], nrows: int, ncols: int) -> Matrix:
    """Build a matrix from a ``{(row, col): value}`` mapping."""
    data: dict[int, dict[int, object]] = {}
    for (i, j), v in entries.items():
        q = _q(v)
        if q:
            data.setdefault(i, {})[j] = q
    return DomainMatrix(data, (nrows, ncols), QQ)


def entry(m: Matrix, i: int, j: int):
    return m[i, j].element


def rows_of(m: Matrix) -> list[list]:
    nrows, ncols = m.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [[] for _ in range(nrows)]
    return m.to_list()


def mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product that tolerates empty dimensions."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} * {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a * b


def is_zero(m: Matrix) -> bool:
    nrows, ncols = m.shape
    return nrows == 0 or ncols == 0 or m.is_zero_matrix


def rank(m: Matrix) -> int:
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    return m.to_sparse().rank()


def kernel(m: Matrix) -> Matrix:
    """Basis of the right nullspace, returned as the columns of a matrix."""
    nrows, ncols = m.shape
    if ncols == 0:
        return zeros(0, 0)
    if nrows == 0 or m.is_zero_matrix:
        return eye(ncols)
    null = m.to_sparse().nullspace()
    if null.shape[0] == 0:
        return zeros(ncols, 0)
    return null.transpose().to_dense()


def hstack(blocks: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    blocks = [b for b in blocks]
    if not blocks:
        return zeros(nrows or 0, 0)
    height = blocks[0].shape[0]
    nonempty = [b for b in blocks if b.shape[1]]
    if not nonempty:
        return zeros(height, 0)
    if height == 0:
        return zeros(0, sum(b.shape[1] for b in nonempty))
    if len(nonempty) == 1:
        return nonempty[0]
    return nonempty[0].hstack(*nonempty[1:])


def vstack(blocks: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    blocks = [b for b in blocks]
    if not blocks:
        return zeros(0, ncols or 0)
    width = blocks[0].shape[1]
    nonempty = [b for b in blocks if b.shape[0]]
    if not nonempty:
        return zeros(0, width)
    if width == 0:
        return zeros(sum(b.shape[0] for b in nonempty), 0)
    if len(nonempty) == 1:
        return nonempty[0]
    return nonempty[0].vstack(*nonempty[1:])


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    nrows = sum(b.shape[0] for b in blocks)
    ncols = sum(b.shape[1] for b in blocks)
    entries: dict[tuple[int, int], object] = {}
    r = c = 0
    for b in blocks:
        for i, row in enumerate(rows_of(b)):
            for j, v in enumerate(row):
                if v:
                    entries[(r + i, c + j)] = v
        r += b.shape[0]
        c += b.shape[1]
    return sparse(entries, nrows, ncols).to_dense()


def select_rows(m: Matrix, idx: Iterable[int]) -> Matrix:
    idx = list(idx)
    if not idx or m.shape[1] == 0:
        return zeros(len(idx), m.shape[1])
    return m.extract(idx, list(range(m.shape[1])))


def select_columns(m: Matrix, idx: Iterable[int]) -> Matrix:
    idx = list(idx)
    if not idx or m.shape[0] == 0:
        return zeros(m.shape[0], len(idx))
    return m.extract(list(range(m.shape[0])), idx)


def column(m: Matrix, j: int) -> Matrix:
    return select_columns(m, [j])


def columns(m: Matrix) -> list[Matrix]:
    return [column(m, j) for j in range(m.shape[1])]


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution ``x`` of ``a x = b`` or ``None`` when the system is inconsistent."""
    nrows, ncols = a.shape
    k = b.shape[1]
    if nrows == 0 or is_zero(b):
        return zeros(ncols, k)
    if ncols == 0:
        return None
    aug = a.hstack(b).to_sparse()
    red, pivots = aug.rref()
    if any(p >= ncols for p in pivots):
        return None
    sol: dict[tuple[int, int], object] = {}
    for r, p in enumerate(pivots):
        row = red.rep.get(r, {}) if isinstance(red.rep, dict) else {}
        for j in range(k):
            v = row.get(ncols + j) if row else red[r, ncols + j].element
            if v:
                sol[(p, j)] = v
    return sparse(sol, ncols, k).to_dense()


def inverse(m: Matrix) -> Matrix:
    if m.shape[0] == 0:
        return m
    return m.to_dense().inv()
