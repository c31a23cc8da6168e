from __future__ import annotations

import json

import pytest

from hnakayama.cli import format_class, main, parse_class

CLASS_PAIR_ROWS = [
    ("M", "(3 ⊕ 2/3 ⊕ 1/2, 0)"),
    ("add{2/3 ⊕ 1/2 ⊕ 1}", "(2/3 ⊕ 1/2 ⊕ 1, 0)"),
    ("add{1/2 ⊕ 1}", "(1/2 ⊕ 1, 3)"),
    ("add{1}", "(1, 3 ⊕ 2/3)"),
    ("add{3}", "(3, 2/3 ⊕ 1/2)"),
    ("{0}", "(0, 3 ⊕ 2/3 ⊕ 1/2)"),
]


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _table_rows(text):
    lines = [line for line in text.splitlines() if line.startswith("| ")][1:]
    return [tuple(c.strip() for c in line.strip("|").split("|")) for line in lines]


def test_enumerate_markdown(capsys):
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "2", "--format", "md")
    assert code == 0
    assert _table_rows(out) == CLASS_PAIR_ROWS


def test_enumerate_with_classical_column(capsys):
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "2", "--tiny")
    assert code == 0
    assert [row[1] for row in _table_rows(out)] == [
        "mod A",
        "add{2/3 ⊕ 2 ⊕ 1/2 ⊕ 1}",
        "add{1/2 ⊕ 1}",
        "add{1}",
        "add{3}",
        "{0}",
    ]


def test_silting_markdown(capsys):
    code, out, _ = _run(capsys, "silting", "--l", "1,2", "--d", "2")
    assert code == 0
    assert [row[2] for row in _table_rows(out)] == [
        "0 → 0 → 3 ⊕ 2/3 ⊕ 1/2",
        "3 → 2/3 → 2/3 ⊕ 1/2 ⊕ 1/2",
        "3 ⊕ 3 → 2/3 → 1/2 ⊕ 1/2",
        "3 ⊕ 3 ⊕ 2/3 → 2/3 → 1/2",
        "2/3 ⊕ 1/2 → 0 → 3",
        "3 ⊕ 2/3 ⊕ 1/2 → 0 → 0",
    ]


def test_degenerate_but_legal_input(capsys):
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "3")
    assert code == 0 and out


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--l", "1,3", "--d", "2"],
        ["enumerate", "--l", "2,2", "--d", "2"],
        ["enumerate", "--l", "1,2", "--d", "1"],
        ["enumerate", "--l", "1,2", "--d", "0"],
        ["enumerate", "--l", "1,2,3", "--d", "2", "--tiny"],
        ["enumerate", "--l", "1,2", "--d", "2", "--format", "xml"],
        ["slices", "--l", "1,2", "--d", "2", "--format", "dot"],
        ["pair", "--l", "1,2", "--d", "2"],
        ["pair", "--l", "1,2", "--d", "2", "--class", "0,0,0;0,0,1"],
        ["pair", "--l", "1,2", "--d", "2", "--class", "0,0,7"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_unknown_command_exits_with_usage_code(capsys):
    with pytest.raises(SystemExit) as caught:
        main(["bogus", "--l", "1,2", "--d", "2"])
    assert caught.value.code == 2


def test_d1_behind_flag(capsys):
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "1", "--allow-d1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["classes"]) == 5


def test_json_round_trip(capsys):
    _, out, _ = _run(capsys, "silting", "--l", "1,2", "--d", "2", "--format", "json")
    payload = json.loads(out)
    for rec in payload["complexes"]:
        selector = format_class(rec["members"])
        code, again, _ = _run(capsys, "silting", "--l", "1,2", "--d", "2", "--format", "json", "--class", selector)
        assert code == 0
        assert json.loads(again)["complexes"] == [rec]


def test_enumerate_json_reingests(capsys):
    _, out, _ = _run(capsys, "enumerate", "--l", "1,2,2", "--d", "2", "--format", "json")
    for rec in json.loads(out)["classes"]:
        code, again, _ = _run(capsys, "enumerate", "--l", "1,2,2", "--d", "2", "--format", "json", "--class", format_class(rec["members"]))
        assert code == 0
        assert json.loads(again)["classes"] == [rec]


def test_parse_class_accepts_brackets():
    assert parse_class("(0,1,1); (1,1,1)") == ((0, 1, 1), (1, 1, 1))
    assert parse_class("") == ()


def test_output_is_deterministic(capsys):
    first = _run(capsys, "table", "--l", "1,2,2", "--d", "2", "--format", "json")[1]
    second = _run(capsys, "table", "--l", "1,2,2", "--d", "2", "--format", "json")[1]
    assert first == second


def test_parallel_output_matches_serial(capsys):
    serial = _run(capsys, "silting", "--l", "1,2,2", "--d", "2", "--format", "json")[1]
    parallel = _run(capsys, "silting", "--l", "1,2,2", "--d", "2", "--format", "json", "--jobs", "2")[1]
    assert serial == parallel


def test_dot_has_only_cover_edges(capsys):
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph") and out.count("->") == 6


def test_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "classes.csv"
    code, out, _ = _run(capsys, "enumerate", "--l", "1,2", "--d", "2", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "class,module_part,proj_part" and len(lines) == 7


def test_pair_reports_maximality(capsys):
    code, out, _ = _run(capsys, "pair", "--l", "1,2", "--d", "2", "--class", "0,1,1;1,1,1", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["maximal"]["maximal"]
    assert payload["proj_part"] == [[0, 0, 0]]


def test_slices_command(capsys):
    code, out, _ = _run(capsys, "slices", "--l", "1,2,2", "--d", "2", "--format", "json")
    slices = json.loads(out)["slices"]
    assert code == 0 and len(slices) == 1 and slices[0]["passes"]


def test_verify_passes(capsys):
    code, out, _ = _run(capsys, "verify", "--l", "1,2", "--d", "2", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hnakayama import verify

    def broken(ctx, out):
        out.checked = 1
        out.failures.append("forced")

    monkeypatch.setattr(verify, "CHECKS", verify.CHECKS + [("forced failure", broken)])
    code, out, _ = _run(capsys, "verify", "--l", "1,2", "--d", "2")
    assert code == 1 and "FAIL" in out


def test_internal_breach_exit_code(capsys, monkeypatch):
    from hnakayama import cli

    def boom(alg, cfg):
        raise ArithmeticError("forced breach")

    monkeypatch.setitem(cli.RUNNERS, "enumerate", boom)
    code, _, err = _run(capsys, "enumerate", "--l", "1,2", "--d", "2")
    assert code == 3
    assert json.loads(err)["message"] == "forced breach"
