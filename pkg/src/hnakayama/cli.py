"""Command line front door: ``hnakayama <command> --l 1,2 --d 2 [--format md]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant breach (a JSON witness is written to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import complexes as C
from . import render
from . import tau_tilting as T
from . import tiny
from .algebra import Algebra, KupischError, Tup, colex_key
from .reps import DecompositionError
from .torsion import DTorsionClass, TorsionLattice, check_axioms, enumerate_classes

__all__ = ["RunConfig", "UsageError", "dispatch", "main", "parse_class"]

COMMANDS = ("enumerate", "pair", "silting", "verify", "slices", "table")
FORMATS = ("json", "csv", "dot", "md")

# formats each command can emit
SUPPORTED = {
    "enumerate": {"json", "csv", "dot", "md"},
    "pair": {"json", "md"},
    "silting": {"json", "csv", "md"},
    "verify": {"json", "csv", "md"},
    "slices": {"json", "md"},
    "table": {"json", "csv", "md"},
}


class UsageError(ValueError):
    """Invalid command line input; reported with exit code 2."""


class VerificationFailed(RuntimeError):
    """Raised by ``verify`` once its report is written."""


@dataclass(frozen=True)
class RunConfig:
    kupisch: tuple[int, ...]
    d: int
    command: str
    fmt: str = "md"
    allow_d1: bool = False
    tiny: bool = False
    selection: tuple[Tup, ...] | None = None
    out: str | None = None
    jobs: int = 1


def parse_kupisch(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError as exc:
        raise UsageError(f"--l expects comma separated integers, got {text!r}") from exc


def parse_class(text: str) -> tuple[Tup, ...]:
    """``"0,1,1;1,1,1"`` to tuples; surrounding brackets are ignored."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()[] ")
        if not chunk:
            continue
        try:
            out.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError as exc:
            raise UsageError(f"bad tuple {chunk!r} in --class") from exc
    return tuple(out)


def format_class(members: Sequence[Sequence[int]]) -> str:
    return ";".join(",".join(str(v) for v in x) for x in members)


def build_algebra(cfg: RunConfig) -> Algebra:
    if cfg.d < 1:
        raise UsageError("d must be at least 1")
    if cfg.d == 1 and not cfg.allow_d1:
        raise UsageError("d = 1 is the classical case; pass --allow-d1 to run it")
    try:
        alg = Algebra.from_kupisch(cfg.kupisch, cfg.d)
    except KupischError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.tiny and not alg.is_path_quiver():
        raise UsageError("--tiny needs a quiver that is a single path")
    if cfg.fmt not in SUPPORTED[cfg.command]:
        raise UsageError(f"{cfg.command} cannot emit {cfg.fmt}")
    return alg


def selected_class(alg: Algebra, members: Sequence[Tup]) -> DTorsionClass:
    for x in members:
        if not alg.is_indec(x):
            raise UsageError(f"{x} is not an indecomposable of M")
    violation = check_axioms(alg, members)
    if violation is not None:
        raise UsageError(f"selection is not a d-torsion class: {json.dumps(violation.to_json())}")
    return DTorsionClass(alg, tuple(members))


def table_order(lattice: TorsionLattice) -> list[DTorsionClass]:
    """Largest classes first, ties by colex order of the sorted members descending."""
    return sorted(
        lattice.nodes,
        key=lambda n: (len(n.members), [colex_key(x) for x in n.members]),
        reverse=True,
    )


def classes_for(alg: Algebra, cfg: RunConfig) -> list[DTorsionClass]:
    if cfg.selection is not None:
        return [selected_class(alg, cfg.selection)]
    return table_order(enumerate_classes(alg))


# ---------------------------------------------------------------------------
# per-class records


def _tiny_column(alg: Algebra, node: DTorsionClass) -> dict:
    t = tiny.minimal_containing(alg, node.members)
    report = tiny.check_induces(alg, t)
    return {
        "classical_class": [[list(v) for v in iv] for iv in t],
        "induces": report.induces,
    }


def class_record(alg: Algebra, node: DTorsionClass, with_tiny: bool) -> dict:
    pair = T.pair_of(node)
    rec = {
        "members": [list(x) for x in node.members],
        "module_part": [list(x) for x in pair.module_part],
        "proj_part": [list(x) for x in pair.proj_part],
    }
    if with_tiny:
        rec.update(_tiny_column(alg, node))
    return rec


def _multisets_json(cx: C.ProjComplex) -> dict:
    return {str(deg): [list(v) for v in vs] for deg, vs in sorted(cx.multisets().items())}


def silting_record(alg: Algebra, node: DTorsionClass) -> dict:
    pair = T.pair_of(node)
    total = C.assemble(alg, pair.module_part, pair.proj_part).total
    cert = C.is_silting(alg, node.members, pair.module_part, pair.proj_part)
    return {
        "members": [list(x) for x in node.members],
        "module_part": [list(x) for x in pair.module_part],
        "proj_part": [list(x) for x in pair.proj_part],
        "complex": _multisets_json(total),
        "certificate": cert.to_json(),
    }


def _silting_job(args: tuple[tuple[int, ...], int, tuple[Tup, ...]]) -> dict:
    kupisch, d, members = args
    alg = Algebra.from_kupisch(kupisch, d)
    return silting_record(alg, DTorsionClass(alg, members))


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# rendering helpers


def _class_cell(alg: Algebra, members: Sequence[Sequence[int]]) -> str:
    if len(members) == len(alg.indecs):
        return "M"
    return render.class_label(alg, [tuple(x) for x in members])


def _classical_cell(alg: Algebra, ivs: Sequence[Sequence[Sequence[int]]]) -> str:
    model = tiny.tiny_model(alg)
    return render.classical_class_label(alg, ivs, model.path, len(model.intervals))


def _pair_cell(alg: Algebra, rec: dict) -> str:
    return render.pair_label(alg, [tuple(x) for x in rec["module_part"]], [tuple(x) for x in rec["proj_part"]])


def _complex_cell(alg: Algebra, rec: dict) -> str:
    ms = {int(k): [tuple(v) for v in vs] for k, vs in rec["complex"].items()}
    return render.complex_line(alg, ms)


def _header(alg: Algebra) -> dict:
    return {"algebra": alg.to_json()}


# ---------------------------------------------------------------------------
# commands


def run_enumerate(alg: Algebra, cfg: RunConfig) -> str:
    if cfg.fmt == "dot":
        lattice = enumerate_classes(alg)
        return render.lattice_dot(alg, [n.members for n in lattice.nodes], lattice.edges)
    nodes = classes_for(alg, cfg)
    recs = [class_record(alg, n, cfg.tiny) for n in nodes]
    if cfg.fmt == "json":
        payload = _header(alg)
        payload["classes"] = recs
        if cfg.selection is None:
            lattice = enumerate_classes(alg)
            order = [lattice.index_of(n.members) for n in nodes]
            where = {old: new for new, old in enumerate(order)}
            payload["edges"] = sorted([where[i], where[j]] for i, j in lattice.edges)
        return render.dump_json(payload)
    header = ["U"] + (["T"] if cfg.tiny else []) + ["(M_U, P_U)"]
    rows = []
    for r in recs:
        row = [_class_cell(alg, r["members"])]
        if cfg.tiny:
            row.append(_classical_cell(alg, r["classical_class"]))
        row.append(_pair_cell(alg, r))
        rows.append(row)
    if cfg.fmt == "csv":
        csv_rows = [[format_class(r["members"]), format_class(r["module_part"]), format_class(r["proj_part"])] for r in recs]
        return render.to_csv(["class", "module_part", "proj_part"], csv_rows)
    return render.markdown_table(header, rows)


def run_pair(alg: Algebra, cfg: RunConfig) -> str:
    if cfg.selection is None:
        raise UsageError("pair needs --class")
    node = selected_class(alg, cfg.selection)
    rec = class_record(alg, node, cfg.tiny)
    cert = T.is_maximal_pair(alg, rec["module_part"], rec["proj_part"])
    cores = T.coresolve_regular(node)
    rec["maximal"] = cert.to_json()
    rec["coresolution"] = cores.to_json()
    if cfg.fmt == "json":
        payload = _header(alg)
        payload.update(rec)
        return render.dump_json(payload)
    rows = [
        ["class", _class_cell(alg, rec["members"])],
        ["pair", _pair_cell(alg, rec)],
        ["maximal tau_d-rigid", str(cert.maximal)],
        ["coresolution length", str(len(cores))],
    ]
    return render.markdown_table(["field", "value"], rows)


def run_silting(alg: Algebra, cfg: RunConfig) -> str:
    nodes = classes_for(alg, cfg)
    jobs = [(tuple(alg.kupisch.entries), alg.d, n.members) for n in nodes]
    recs = _map(_silting_job, jobs, cfg.jobs)
    if cfg.fmt == "json":
        payload = _header(alg)
        payload["complexes"] = recs
        return render.dump_json(payload)
    if cfg.fmt == "csv":
        rows = []
        for r in recs:
            cert = r["certificate"]
            degrees = [format_class(r["complex"][str(deg)]) for deg in range(-alg.d, 1)]
            rows.append([format_class(r["members"]), *degrees, cert["presilting"], cert["silting"]])
        return render.to_csv(["class", *[f"degree {deg}" for deg in range(-alg.d, 1)], "presilting", "silting"], rows)
    rows = [
        [
            _class_cell(alg, r["members"]),
            _pair_cell(alg, r),
            _complex_cell(alg, r),
            str(r["certificate"]["silting"]),
        ]
        for r in recs
    ]
    return render.markdown_table(["U", "(M_U, P_U)", "complex", "silting"], rows)


def run_table(alg: Algebra, cfg: RunConfig) -> str:
    with_tiny = cfg.tiny or alg.is_path_quiver()
    nodes = classes_for(alg, cfg)
    jobs = [(tuple(alg.kupisch.entries), alg.d, n.members) for n in nodes]
    srecs = _map(_silting_job, jobs, cfg.jobs)
    recs = []
    for node, s in zip(nodes, srecs):
        rec = class_record(alg, node, with_tiny)
        rec["complex"] = s["complex"]
        rec["silting"] = s["certificate"]["silting"]
        recs.append(rec)
    if cfg.fmt == "json":
        payload = _header(alg)
        payload["rows"] = recs
        return render.dump_json(payload)
    header = ["U"] + (["T"] if with_tiny else []) + ["(M_U, P_U)", "complex"]
    rows = []
    for r in recs:
        row = [_class_cell(alg, r["members"])]
        if with_tiny:
            row.append(_classical_cell(alg, r["classical_class"]))
        row += [_pair_cell(alg, r), _complex_cell(alg, r)]
        rows.append(row)
    if cfg.fmt == "csv":
        return render.to_csv(header, rows)
    return render.markdown_table(header, rows)


def run_slices(alg: Algebra, cfg: RunConfig) -> str:
    if cfg.selection is not None:
        slices = [tuple(cfg.selection)]
    else:
        slices = T.enumerate_slices(alg)
    recs = []
    for s in slices:
        cert = T.slice_certificate(alg, s)
        recs.append({"slice": [list(x) for x in s], "certificate": cert.to_json(), "passes": cert.tilting_consequences})
    if cfg.fmt == "json":
        payload = _header(alg)
        payload["slices"] = recs
        return render.dump_json(payload)
    rows = [[format_class(r["slice"]), str(r["certificate"]["slice"]), str(r["passes"])] for r in recs]
    return render.markdown_table(["tuples", "slice", "tilting consequences"], rows)


def _verify_job(args: tuple[tuple[int, ...], int, str]) -> dict:
    from .verify import run_checks

    kupisch, d, name = args
    return run_checks(Algebra.from_kupisch(kupisch, d), [name])[0].to_json()


def run_verify(alg: Algebra, cfg: RunConfig) -> str:
    from .verify import CHECKS, run_checks

    if cfg.jobs > 1:
        jobs = [(tuple(alg.kupisch.entries), alg.d, name) for name, _ in CHECKS]
        results = _map(_verify_job, jobs, cfg.jobs)
    else:
        results = [r.to_json() for r in run_checks(alg)]
    ok = all(r["passed"] for r in results)
    for r in results:
        r.pop("seconds", None)
    if cfg.fmt == "json":
        payload = _header(alg)
        payload["passed"] = ok
        payload["checks"] = results
        text = render.dump_json(payload)
    else:
        def status(r: dict) -> str:
            if r["skipped"]:
                return "skipped: " + r["skipped"]
            return "pass" if r["passed"] else "FAIL"

        rows = [[r["name"], status(r), r["checked"], "; ".join(r["failures"])] for r in results]
        header = ["check", "status", "cases", "failures"]
        text = render.to_csv(header, rows) if cfg.fmt == "csv" else render.markdown_table(header, rows)
    if not ok:
        raise VerificationFailed(text)
    return text


RUNNERS = {
    "enumerate": run_enumerate,
    "pair": run_pair,
    "silting": run_silting,
    "verify": run_verify,
    "slices": run_slices,
    "table": run_table,
}


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def dispatch(cfg: RunConfig) -> int:
    try:
        alg = build_algebra(cfg)
        text = RUNNERS[cfg.command](alg, cfg)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except VerificationFailed as exc:
        _emit(str(exc), cfg.out)
        return 1
    except (ArithmeticError, AssertionError, C.WitnessNotFound, DecompositionError) as exc:
        witness = {
            "error": type(exc).__name__,
            "message": str(exc),
            "config": {"l": list(cfg.kupisch), "d": cfg.d, "command": cfg.command},
            "traceback": traceback.format_exc().splitlines()[-6:],
        }
        sys.stderr.write(json.dumps(witness, indent=2) + "\n")
        return 3
    _emit(text, cfg.out)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 as well; keep the message format uniform
        self.print_usage(sys.stderr)
        self.exit(2, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hnakayama", description="d-torsion classes, tau_d-rigid pairs and silting complexes of A_l^d")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--l", required=True, help="Kupisch series, e.g. 1,2,3")
    parser.add_argument("--d", required=True, type=int, help="cluster tilting degree d")
    parser.add_argument("--class", dest="selection", help="class as semicolon separated tuples, e.g. '0,1,1;1,1,1'")
    parser.add_argument("--format", dest="fmt", default="md", help="json, csv, dot or md")
    parser.add_argument("--out", help="write output to this path")
    parser.add_argument("--allow-d1", action="store_true", help="permit the classical case d = 1")
    parser.add_argument("--tiny", action="store_true", help="add classical torsion classes (path quivers only)")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for silting, table and verify")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.fmt not in FORMATS:
            raise UsageError(f"unknown format {args.fmt!r}")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        cfg = RunConfig(
            kupisch=parse_kupisch(args.l),
            d=args.d,
            command=args.command,
            fmt=args.fmt,
            allow_d1=args.allow_d1,
            tiny=args.tiny,
            selection=parse_class(args.selection) if args.selection is not None else None,
            out=args.out,
            jobs=args.jobs,
        )
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
