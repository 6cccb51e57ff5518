from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
import time

import pytest

from index2walsh.cli import EXIT_CHECK, EXIT_INSTANCE, EXIT_OK, EXIT_USAGE, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_2_7_passes_quickly(capsys):
    t0 = time.perf_counter()
    code, out, _ = run(["verify", "--p", "2", "--l", "7"], capsys)
    assert time.perf_counter() - t0 < 60
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["convention"] == {"b": -1, "delta": 1, "source": "alpha-anchored"}
    statuses = {c["name"]: c["status"] for c in rep["checks"]}
    assert statuses["oracle.spectrum"] == "pass"
    assert "fail" not in statuses.values()


def test_verify_above_bound_skips_oracle(capsys):
    code, out, _ = run(["verify", "--p", "11", "--l", "7", "--verify-bound", "1000"], capsys)
    assert code == EXIT_OK
    checks = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert checks["oracle.spectrum"] == "skipped"
    assert checks["subfield.trace_table"] == "pass"


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["spectrum", "--p", "3", "--l", "7"], EXIT_INSTANCE),
        (["spectrum", "--p", "2", "--l", "13"], EXIT_INSTANCE),
        (["spectrum", "--p", "4", "--l", "7"], EXIT_INSTANCE),
        (["spectrum", "--p", "2"], EXIT_USAGE),
        (["frobnicate", "--p", "2", "--l", "7"], EXIT_USAGE),
        (["spectrum", "--p", "2", "--l", "7", "--format", "xml"], EXIT_USAGE),
        (["cyclo"], EXIT_USAGE),
        (["spectrum", "--p", "2", "--l", "7", "--precision", "2"], EXIT_USAGE),
    ],
)
def test_exit_codes(argv, expected, capsys):
    code, out, err = run(argv, capsys)
    assert code == expected
    assert out == "" and err


def test_spectrum_is_deterministic_and_formats_agree(capsys):
    argv = ["spectrum", "--p", "3", "--l", "107"]
    _, first, _ = run(argv + ["--format", "json"], capsys)
    _, second, _ = run(argv + ["--format", "json"], capsys)
    assert first == second
    d = json.loads(first)
    _, text, _ = run(argv + ["--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["k_class"] for r in rows] == [line["k_class"] for line in d["lines"]]
    assert sum(int(r["frequency"]) for r in rows) == 3**5671
    assert d["convention"]["source"] == "b>0"


def test_params_output(capsys):
    code, out, _ = run(["params", "--p", "3", "--l", "107"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK and d["h"] == 3 and d["f"] == 5671


def test_gauss_includes_enumeration_when_small(capsys):
    code, out, _ = run(["gauss", "--p", "2", "--l", "7"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK
    for e in d["gauss_sums"]:
        re, im = (float(x) for x in e["approx"])
        bre, bim = (float(x) for x in e["brute_approx"])
        assert abs(re - bre) + abs(im - bim) < 1e-6 * 2**10.5


def test_trace_table_text(capsys):
    code, out, _ = run(["trace-table", "--p", "11", "--l", "7", "--format", "text"], capsys)
    assert code == EXIT_OK and "epsilon=6" in out


def test_cyclo(capsys):
    code, out, _ = run(["cyclo", "--q", "13"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK and d["match"] is True
    assert d["closed_form"]["(0,0)"] == 2
    code, _, _ = run(["cyclo", "--q", "16"], capsys)
    assert code == EXIT_CHECK


def test_output_file(tmp_path, capsys):
    target = tmp_path / "spectrum.csv"
    code, out, _ = run(["spectrum", "--p", "2", "--l", "7", "--format", "csv", "--output", str(target)], capsys)
    assert code == EXIT_OK and out == ""
    assert target.read_text().startswith("k_class")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "index2walsh", "params", "--p", "2", "--l", "7"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["a"] == -1
