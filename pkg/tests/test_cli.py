import csv
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import jordan
from isopencil.analysis import (
    AnalyzeConfig,
    emit_support_csv,
    margins_clear,
    parse_matrix,
    run_analyze,
    write_matrix,
)
from isopencil.cli import main
from isopencil.errors import ParseError


@pytest.fixture
def chain4_file(tmp_path, B_chain4):
    path = tmp_path / "chain4.json"
    write_matrix(B_chain4, path)
    return path


def test_parse_chain4(chain4_file):
    B = parse_matrix(chain4_file)
    assert B.shape == (4, 4)
    assert B[0, 1] == 1 and B[1, 3] == -1


def test_parse_five_by_five(tmp_path, B_five):
    rows = [[[float(x.real), 0.0] for x in row] for row in B_five]
    path = tmp_path / "five.json"
    path.write_text(json.dumps({"n": 5, "rows": rows}))
    assert np.array_equal(parse_matrix(path), B_five)


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 2, "rows": [[[1, 0], [0, 0]], [[0, 0]]]},
        {"n": 3, "rows": [[[1, 0]]]},
        {"rows": [[[1, 0, 0]]]},
        {"rows": [[["a", 0]]]},
        [1, 2],
    ],
)
def test_parse_errors(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ParseError):
        parse_matrix(path)


def test_parse_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        parse_matrix(path)


@settings(max_examples=25)
@given(data=st.data(), n=st.integers(1, 5))
def test_round_trip_bit_exact(tmp_path_factory, data, n):
    vals = data.draw(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=2 * n * n, max_size=2 * n * n))
    B = (np.array(vals[: n * n]) + 1j * np.array(vals[n * n :])).reshape(n, n)
    path = tmp_path_factory.mktemp("rt") / "m.json"
    write_matrix(B, path)
    assert np.array_equal(parse_matrix(path), B)


def test_analyze_chain4(B_chain4):
    r = run_analyze(B_chain4)
    assert r.thm1_direct and r.thm1_word and r.thm1_range
    assert not r.thm32_exists
    assert r.radii == pytest.approx([1.0, 0.5], abs=1e-12)
    assert r.nilpotent and r.rank_constant and margins_clear(r)


def test_analyze_nil5(B_nil5):
    r = run_analyze(B_nil5)
    assert r.nilpotent
    assert not r.thm1_word and r.thm1_word_violations[0] == [3, 1]
    assert r.radii[0] == pytest.approx(1.0, abs=1e-12)
    assert not r.thm1_direct and not r.thm1_range


def test_analyze_zero():
    r = run_analyze(np.zeros((2, 2)))
    assert r.thm1_direct and r.thm1_word and r.thm1_range and r.thm32_exists
    assert r.radii == [0.0]


def test_analyze_with_lax(B_chain4):
    r = run_analyze(B_chain4, AnalyzeConfig(lax_steps=200))
    assert r.lax_summary["steps"] == 200
    assert r.lax_summary["max_similarity_error"] < 1e-6


def test_report_invariants():
    rng = np.random.default_rng(0)
    for B in (jordan(3), rng.normal(size=(3, 3)) + 0j):
        r = run_analyze(B)
        assert not r.thm32_exists or r.thm1_direct
        if margins_clear(r):
            assert r.conditions_agree


def test_config_validation(B_chain4):
    with pytest.raises(ValueError):
        run_analyze(B_chain4, AnalyzeConfig(samples=4))
    with pytest.raises(ValueError):
        run_analyze(B_chain4, AnalyzeConfig(tol=0))


def test_deterministic_json(chain4_file, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["analyze", str(chain4_file), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert list(doc) == sorted(doc)
    assert doc["thm1_direct"] is True and doc["thm32_exists"] is False


@pytest.mark.parametrize(
    "B, expected",
    [
        (np.array([[0, 1, 1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [0, 0, 0, 0]], dtype=complex), 1.0),
        (jordan(2), 0.5),
        (np.zeros((3, 3)), 0.0),
    ],
)
def test_support_csv(tmp_path, B, expected):
    path = tmp_path / "s.csv"
    emit_support_csv(B, 1, 720, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["theta", "lambda_k"]
    assert len(rows) == 721
    vals = np.array([float(r[1]) for r in rows[1:]])
    assert np.abs(vals - expected).max() <= 1e-9
    assert float(rows[5][0]) == 2 * np.pi * 4 / 720


def test_cli_range_and_similar(chain4_file, tmp_path, capsys):
    csv_path = tmp_path / "r.csv"
    assert main(["range", str(chain4_file), "--k", "2", "--samples", "64", "--csv", str(csv_path)]) == 0
    assert len(csv_path.read_text().splitlines()) == 65
    capsys.readouterr()
    assert main(["similar", str(chain4_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["exists"] is False

    jpath = tmp_path / "j.json"
    write_matrix(jordan(4), jpath)
    assert main(["similar", str(jpath)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["exists"] and doc["conjugation_error"] < 1e-9 and doc["K"]["n"] == 4


def test_cli_lax(chain4_file, tmp_path, capsys):
    out = tmp_path / "traj.json"
    assert main(["lax", str(chain4_file), "--steps", "64", "--out", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out)
    traj = json.loads(out.read_text())
    assert summary["steps"] == 64 and len(traj["t"]) == 65 and len(traj["U"]) == 65


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": [[[1, 0]], []]}')
    assert main(["analyze", str(bad)]) == 1
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1
    diag4 = tmp_path / "diag4.json"
    write_matrix(np.diag([1, 0, -1, 1j]), diag4)
    assert main(["lax", str(diag4), "--steps", "32"]) == 2
    assert main(["analyze", str(diag4)]) == 0
