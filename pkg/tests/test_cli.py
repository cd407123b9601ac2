from __future__ import annotations

import io
import json

import pytest

from charp_sing.cli import main


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_script_run(tmp_path, capsys):
    src = tmp_path / "e6.txt"
    src.write_text("p=7; ring x,y,z; ideal f = x^2+y^3+z^4; check-flift f; check-fpure f;\n")
    code, report = run(capsys, ["run", str(src)])
    assert code == 0 and report["schema"] == "v1" and report["status"] == "ok"
    flift, fpure = report["results"]
    assert flift["verdict"] == "liftable" and flift["replayed"]
    assert set(flift["witness"]) == {"g", "h"} and len(flift["witness"]["h"]) == 3
    assert "timing-ms" in flift
    assert fpure["verdict"] == "f-pure"


def test_stdin_and_membership(capsys, monkeypatch):
    script = "p=3; ring x,y; ideal I = x^2, y^2; member x^2y I; member xy I; colon I x;"
    code, report = run(capsys, ["run", "-"], stdin=script, monkeypatch=monkeypatch)
    assert code == 0
    m1, m2, col = report["results"]
    assert m1["verdict"] == "member" and m2["verdict"] == "not-member"
    assert m2["certificate"]["remainder"] == "x*y"
    assert col["verdict"] == "computed"


def test_parse_error_exit_code(capsys, monkeypatch):
    code, report = run(capsys, ["run", "-"], stdin="p=4; ring x;", monkeypatch=monkeypatch)
    assert code == 2 and report["status"] == "error"
    assert report["error"] == "1:3: 4 is not prime"


def test_unknown_command(capsys, monkeypatch):
    code, report = run(capsys, ["run", "-"], stdin="p=3; ring x; frobnicate x;", monkeypatch=monkeypatch)
    assert code == 2 and "unknown command" in report["error"]


def test_catalog_e8(capsys):
    code, report = run(capsys, ["catalog", "E8", "--p", "7"])
    assert code == 0
    (row,) = report["results"]
    assert row["verdict"] == "liftable" and row["ok"] and row["claim"]


@pytest.mark.parametrize("name, p", [("TruncQuadric(6)", 3), ("ODP(5)", 3), ("TripleLine", 3), ("FermatCubic", 7)])
def test_catalog_entries(capsys, name, p):
    code, report = run(capsys, ["catalog", name, "--p", str(p)])
    assert code == 0, report
    assert all(r["ok"] for r in report["results"])


def test_catalog_bad_parameters(capsys):
    code, report = run(capsys, ["catalog", "ODP(3)", "--p", "3"])
    assert code == 2


def test_catalog_inside_script(capsys, monkeypatch):
    code, report = run(capsys, ["run", "-"], stdin="p=3; ring x; catalog TruncQuadric(5);", monkeypatch=monkeypatch)
    assert code == 0 and report["results"][0]["verdict"] == "ok"


def test_mismatch_exit_code(capsys, monkeypatch):
    # witt-verify on a non-F-pure algebra finds no splitting
    code, report = run(capsys, ["run", "-"], stdin="p=3; ring x,y; ideal f = xy(x+y); witt-verify f;", monkeypatch=monkeypatch)
    assert code == 1 and report["results"][0]["verdict"] == "no-splitting"


def test_regular_sequence_rejection(capsys, monkeypatch):
    script = "p=3; ring a,b,c,d,e,g; ideal J = ab+cd+eg, a^3,b^3,c^3,d^3,e^3,g^3; check-flift J; check-w2-quadric J;"
    code, report = run(capsys, ["run", "-"], stdin=script, monkeypatch=monkeypatch)
    rejected, quad = report["results"]
    assert rejected["verdict"] == "rejected"
    assert quad["verdict"] == "not-w2-liftable"


def test_witt_verify_and_sfr_options(capsys, monkeypatch):
    script = "p=3; ring x,y,z; ideal N = xy; ideal A = xy - z^2; witt-verify N u=x^2y^2z^2 samples=50; check-sfr A s=x emax=2;"
    code, report = run(capsys, ["run", "-"], stdin=script, monkeypatch=monkeypatch)
    assert code == 0
    witt, sfr = report["results"]
    assert witt["verdict"] == "verified"
    assert sfr["verdict"] == "regular-at"


def test_bad_option_value(capsys, monkeypatch):
    code, _ = run(capsys, ["run", "-"], stdin="p=3; ring x; ideal f = x; check-sfr f emax=two;", monkeypatch=monkeypatch)
    assert code == 2


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["catalog", "E8"]) == 2
    capsys.readouterr()


def test_reproduce_fast(capsys):
    code, report = run(capsys, ["reproduce", "--fast"])
    assert code == 0
    assert [row["criterion"] for row in report["table"]] == list(range(1, 11))
    assert all(row["status"] == "OK" for row in report["table"])


def test_bad_witness_is_a_usage_error(capsys, monkeypatch):
    script = "p=3; ring x,y,z; ideal N = xy; witt-verify N u=x^2y^2;"
    code, report = run(capsys, ["run", "-"], stdin=script, monkeypatch=monkeypatch)
    assert code == 2 and "not a nonzero constant" in report["error"]
