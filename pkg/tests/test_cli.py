from __future__ import annotations

import csv
import io
import json

import pytest

from excessum.cli import run
from excessum.exact import LaurentPoly
from excessum.recurrence import compute_f

from golden_tables import golden_cases


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_count_example():
    code, out, _ = call("count", "--b", "3", "--family", "rooted-hypertree", "--s", "2")
    assert code == 0 and json.loads(out) == {"count": "75"}


def test_count_by_n_and_oracle():
    code, out, _ = call("count", "--b", "2", "--family", "component", "--ell", "1", "--n", "5", "--oracle")
    assert json.loads(out) == {"count": "205", "oracle": "205"}


def test_forest_oracle():
    code, out, _ = call("count", "--b", "3", "--family", "forest", "--s", "1", "--k", "1", "--oracle")
    d = json.loads(out)
    assert d["count"] == d["oracle"]


def test_count_incompatible_size_is_usage_error():
    code, out, err = call("count", "--b", "3", "--family", "hypertree", "--n", "4")
    assert code == 2 and out == "" and "usage" in err


def test_oracle_cap_is_computation_error():
    code, _, err = call("count", "--b", "2", "--family", "component", "--ell", "0", "--n", "9", "--oracle")
    assert code == 1 and "cap" in err


def test_unknown_flag_and_missing_subcommand():
    assert call("count", "--bogus")[0] == 2
    assert call()[0] == 2
    assert call("count", "--b", "1", "--family", "hypertree", "--s", "1")[0] == 2


def test_hl_matches_table():
    code, out, _ = call("hl", "--b", "2", "--ell", "1")
    d = json.loads(out)
    assert LaurentPoly.from_json(d["f"]) == golden_cases()[(2, 1)] == compute_f(1, 2)


def test_csv_output_is_rfc4180():
    code, out, _ = call("hl", "--b", "3", "--ell", "2", "--format", "csv")
    assert out.endswith("\r\n")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["degree", "coeff"]
    assert len(rows) == 1 + len(compute_f(2, 3).terms)


def test_csv_quotes_nested_values():
    code, out, _ = call("sample", "--b", "2", "--s", "3", "--seed", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["v1", "v2"] and len(rows) == 4


def test_series():
    code, out, _ = call("series", "--b", "2", "--K", "5")
    assert json.loads(out)["egfCounts"] == ["0/1", "1/1", "2/1", "9/1", "64/1", "625/1"]


def test_asympt_compare():
    code, out, _ = call("asympt", "--b", "3", "--family", "rooted-hypertree", "--s", "100", "--compare-exact")
    d = json.loads(out)
    assert {"exact", "estimate", "ratio"} <= set(d) and abs(d["ratio"] - 1) < 0.01


def test_asympt_sandwich():
    code, out, _ = call("asympt", "--b", "2", "--family", "sandwich", "--ell", "1", "--n", "10")
    d = json.loads(out)
    from fractions import Fraction as F

    assert F(d["lower"]) <= F(d["exact"]) <= F(d["upper"])


def test_sample_requires_seed():
    code, _, err = call("sample", "--b", "2", "--s", "3")
    assert code == 2 and "--seed" in err


def test_sample_encode_decode_pipeline(tmp_path, monkeypatch):
    _, forest, _ = call("sample", "--b", "3", "--s", "6", "--k", "1", "--seed", "8")
    _, code_json, _ = call("encode", stdin=forest, monkeypatch=monkeypatch)
    p = tmp_path / "code.json"
    p.write_text(code_json)
    _, back, _ = call("decode", "--input", str(p))
    assert json.loads(back) == json.loads(forest)


def test_decode_invalid_code_is_computation_error(monkeypatch):
    bad = json.dumps({"R": [1], "r": 1, "P": [[2], [3]], "N": [9]})
    code, _, err = call("decode", stdin=bad, monkeypatch=monkeypatch)
    assert code == 1


def test_encode_bad_json_is_usage_error(monkeypatch):
    assert call("encode", stdin="not json", monkeypatch=monkeypatch)[0] == 2


def test_match():
    code, out, _ = call("match", "--b", "2", "--n", "4", "--exact", "--series")
    d = json.loads(out)
    assert d["exact"] == d["series"] == "3/2"
    code, out, _ = call("match", "--b", "2", "--n", "4", "--runs", "100")
    assert code == 2


def test_evolve_exact():
    code, out, _ = call("evolve", "--b", "2", "--n", "4", "--exact")
    assert json.loads(out) == {"exactMean": "19/5"}


def test_evolve_full():
    code, out, _ = call("evolve", "--b", "2", "--n", "4", "--exact", "--asympt", "--runs", "2000", "--seed", "1")
    d = json.loads(out)
    assert set(d) == {"exactMean", "mcMean", "mcStderr", "asympt", "ratio"}


def test_same_seed_same_bytes():
    argv = ("evolve", "--b", "2", "--n", "20", "--runs", "7000", "--seed", "3")
    assert call(*argv)[1] == call(*argv, "--workers", "3")[1]


def test_env_var_caps_workers(monkeypatch):
    from excessum.parallel import resolve_workers

    monkeypatch.setenv("EXCESSUM_THREADS", "2")
    assert resolve_workers(8) == 2
    assert resolve_workers(None) == 2
    monkeypatch.setenv("EXCESSUM_THREADS", "zero")
    with pytest.raises(ValueError):
        resolve_workers(1)
