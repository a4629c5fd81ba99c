import json

import pytest

from genbicat import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cartesian_laws_pass(capsys):
    code, out, _ = _run(capsys, "check", "laws", "--instance", "cartesian", "--max-size", "1")
    assert code == 0
    assert "[FAIL]" not in out and "[PASS]" in out


def test_structured_output_is_deterministic(capsys):
    argv = ("check", "coherent-class", "--instance", "species", "--max-size", "1", "--format", "structured")
    _, a, _ = _run(capsys, *argv)
    _, b, _ = _run(capsys, *argv)
    assert a == b
    data = json.loads(a)
    assert data["passed"] and data["checks"]
    assert all("elapsed" not in c for c in data["checks"])


def test_timings_opt_in(capsys):
    _, out, _ = _run(capsys, "check", "coherent-class", "--instance", "cartesian", "--max-size", "1",
                     "--format", "structured", "--timings")
    assert all("elapsed" in c for c in json.loads(out)["checks"])


def test_fixture_error_names_field(tmp_path, capsys):
    bad = {"spans": [{"left": {"dom": 1, "cod": 1, "table": [0]}, "right": {"dom": 1, "table": [0]}}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, _, err = _run(capsys, "check", "span-laws", "--fixture", str(p))
    assert code == 2
    assert "spans[0].right.cod" in err


def test_fixture_json_syntax_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{\n  \"spans\": [,]\n}")
    code, _, err = _run(capsys, "check", "span-laws", "--fixture", str(p))
    assert code == 2 and "line 2" in err


def test_span_fixture_runs(tmp_path, capsys):
    s = {"left": {"dom": 2, "cod": 1, "table": [0, 0]}, "right": {"dom": 2, "cod": 1, "table": [0, 0]}}
    one = {"left": {"dom": 1, "cod": 1, "table": [0]}, "right": {"dom": 1, "cod": 1, "table": [0]}}
    fixture = {"spans": [s, one], "cells": [{"src": one, "factors": [s, s], "map": [3]}]}
    p = tmp_path / "ok.json"
    p.write_text(json.dumps(fixture))
    code, out, _ = _run(capsys, "check", "span-laws", "--fixture", str(p))
    assert code == 0, out


def test_poly_fixture(tmp_path, capsys):
    f = lambda d, c, t: {"dom": d, "cod": c, "table": t}  # noqa: E731
    P = {"s": f(3, 1, [0, 0, 0]), "p": f(3, 2, [0, 1, 1]), "t": f(2, 1, [0, 0])}
    Q = {"s": f(2, 1, [0, 0]), "p": f(2, 1, [0, 0]), "t": f(1, 1, [0])}
    fixture = {"compositions": [{"P": P, "Q": Q, "inputs": [f(2, 1, [0, 0])]}]}
    p = tmp_path / "poly.json"
    p.write_text(json.dumps(fixture))
    code, out, _ = _run(capsys, "check", "poly-laws", "--instance", "poly", "--fixture", str(p))
    assert code == 0, out


def test_convolve_cell_species(capsys):
    code, out, _ = _run(capsys, "convolve", "--instance", "species", "--cell", "2", "--bound", "3",
                        "--format", "structured")
    assert code == 0
    (chk,) = json.loads(out)["checks"]
    assert chk["bound"]["coend"] == 4


def test_convolve_cell_span(capsys):
    cell = json.dumps({"left": {"dom": 2, "cod": 1, "table": [0, 0]}, "right": {"dom": 2, "cod": 1, "table": [0, 0]}})
    code, out, _ = _run(capsys, "convolve", "--cell", cell, "--mid", "2", "--bound", "2", "--format", "structured")
    assert code == 0
    (chk,) = json.loads(out)["checks"]
    assert chk["bound"]["coend"] == 4


def test_convert_roundtrip_tables(capsys):
    code, out, _ = _run(capsys, "convert", "oplax-to-comonadic", "--functor", "x2", "--max-size", "1")
    assert code == 0
    data = json.loads(out)
    assert data["Phi"] and data["Lambda"]
    code, out, _ = _run(capsys, "convert", "comonadic-to-oplax", "--functor", "identity", "--max-size", "1")
    assert code == 0 and json.loads(out)["phi"]


def test_convert_without_direct_data(capsys):
    code, _, err = _run(capsys, "convert", "comonadic-to-oplax", "--functor", "+1", "--max-size", "1")
    assert code == 2 and "+1" in err


def test_out_file(tmp_path, capsys):
    p = tmp_path / "r.txt"
    code, out, _ = _run(capsys, "check", "coherent-class", "--instance", "cartesian", "--max-size", "1", "--out", str(p))
    assert code == 0 and out == "" and "[PASS]" in p.read_text()


def test_bad_config():
    with pytest.raises(ValueError):
        cli.RunConfig(instance="nope")
    with pytest.raises(ValueError):
        cli.RunConfig(workers=0)


def test_failing_run_exits_one(monkeypatch, capsys):
    from genbicat.report import Check

    def broken(cfg):
        chk = Check("always fails", "test")
        chk.record(False, {"why": "forced"})
        return [chk]

    monkeypatch.setitem(cli.SUITE_FUNCS, "coherent-class", broken)
    code, out, _ = _run(capsys, "check", "coherent-class", "--instance", "cartesian")
    assert code == 1 and "[FAIL]" in out


def test_enumeration_cap_marks_incomplete(monkeypatch):
    from genbicat import finset as fs

    def huge(cfg):
        raise fs.EnumerationTooLarge("too many")

    monkeypatch.setitem(cli.SUITE_FUNCS, "coherent-class", huge)
    rep = cli.run(cli.RunConfig(instance="cartesian", suites=("coherent-class",)))
    (chk,) = rep.checks
    assert chk.incomplete


def test_convolve_two_presheaf_fixtures(tmp_path, capsys):
    F, G = tmp_path / "F.json", tmp_path / "G.json"
    F.write_text(json.dumps({"family": "species", "name": "L"}))
    G.write_text(json.dumps({"family": "const", "value": 1}))
    code, out, _ = _run(capsys, "convolve", "--instance", "species", "--fixture", str(F), "--fixture", str(G),
                        "--cell", "3", "--bound", "3", "--format", "structured")
    assert code == 0
    (chk,) = json.loads(out)["checks"]
    # sum_k C(3, k) k!
    assert chk["bound"]["coend"] == chk["bound"]["reduced"] == 16
    assert len(chk["bound"]["bijection"]) == 16


def test_convolve_cell_file_and_errors(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"cell": {"left": {"dom": 1, "cod": 1, "table": [0]},
                                       "right": {"dom": 1, "cod": 1, "table": [0]}}, "mid": 1}))
    code, out, _ = _run(capsys, "convolve", "--cell", str(c), "--bound", "1")
    assert code == 0 and "coend=1" in out
    code, _, err = _run(capsys, "convolve", "--cell", "{not json")
    assert code == 2 and "--cell" in err
    F = tmp_path / "F.json"
    F.write_text(json.dumps({"family": "species", "name": "nope"}))
    code, _, err = _run(capsys, "convolve", "--instance", "species", "--fixture", str(F), "--cell", "1")
    assert code == 2 and "cases[0].F.name" in err
