"""Text renderings: socle-series labels, markdown tables, CSV and DOT."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .algebra import Algebra, Tup

__all__ = [
    "class_label",
    "classical_class_label",
    "interval_label",
    "pair_label",
    "complex_line",
    "dump_json",
    "lattice_dot",
    "markdown_table",
    "module_label",
    "socle_dictionary",
    "sum_label",
    "to_csv",
]

# Vertex names of the quiver 1 -> 2 -> 3 with one relation, i.e. l = (1, 2), d = 2.
_A12_LABELS = {(0, 0): "3", (0, 1): "2", (1, 1): "1"}


def socle_dictionary(alg: Algebra) -> dict[Tup, str] | None:
    """Vertex names for l = (1, 2), d = 2, else ``None``."""
    if list(alg.kupisch) == [1, 2] and alg.d == 2:
        return dict(_A12_LABELS)
    return None


def module_label(alg: Algebra, x: Sequence[int]) -> str:
    """``2/3`` style label (top over socle) when available, tuple digits otherwise."""
    names = socle_dictionary(alg)
    x = tuple(x)
    if names is None:
        return "(" + ",".join(str(v) for v in x) + ")"
    support = alg.support(x)
    # the top is the vertex x[1:], lower composition factors have smaller coordinates
    ordered = sorted(support, key=lambda v: tuple(reversed(v)), reverse=True)
    return "/".join(names[v] for v in ordered)


def interval_label(alg: Algebra, interval: Sequence[Tup]) -> str:
    names = socle_dictionary(alg)
    if names is None:
        return "[" + " ".join("".join(str(c) for c in v) for v in interval) + "]"
    return "/".join(names[tuple(v)] for v in interval)


def classical_class_label(alg: Algebra, intervals: Sequence[Sequence[Tup]], path: Sequence[Tup], total: int) -> str:
    """``add{...}`` for a torsion class of mod A, summands ordered by top along the path, longer first.

    ``total`` is the number of uniserial modules, so the full class prints as ``mod A``.
    """
    if len(intervals) == total:
        return "mod A"
    if not intervals:
        return "{0}"
    pos = {tuple(v): i for i, v in enumerate(path)}
    ordered = sorted((tuple(tuple(v) for v in iv) for iv in intervals), key=lambda iv: (pos[iv[0]], -len(iv)))
    return "add{" + sum_label(interval_label(alg, iv) for iv in ordered) + "}"


def sum_label(labels: Iterable[str]) -> str:
    items = list(labels)
    return " ⊕ ".join(items) if items else "0"


def class_label(alg: Algebra, members: Sequence[Tup]) -> str:
    if not members:
        return "{0}"
    return "add{" + sum_label(module_label(alg, x) for x in members) + "}"


def pair_label(alg: Algebra, module_part: Sequence[Tup], proj_part: Sequence[Tup]) -> str:
    return (
        "("
        + sum_label(module_label(alg, x) for x in module_part)
        + ", "
        + sum_label(module_label(alg, x) for x in proj_part)
        + ")"
    )


def complex_line(alg: Algebra, multisets: dict[int, Sequence[Tup]]) -> str:
    """``X_{-d} → ... → X_0`` with projectives named by their modules."""
    parts = []
    for deg in range(-alg.d, 1):
        parts.append(sum_label(module_label(alg, alg.projective_of(v)) for v in multisets[deg]))
    return " → ".join(parts)


def markdown_table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def lattice_dot(alg: Algebra, nodes: Sequence[Sequence[Tup]], edges: Iterable[tuple[int, int]]) -> str:
    """Hasse diagram; only cover relations are drawn."""
    lines = ["digraph torsion_lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i, members in enumerate(nodes):
        label = class_label(alg, list(members)).replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(obj: object) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
