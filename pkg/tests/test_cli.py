import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from stieltjes.cli import main
from stieltjes.report import CheckLine, MethodResult, Report, Request, from_json, to_json
from stieltjes.kernel.precision import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_gamma_euler_constant(capsys):
    code, out, _ = run(capsys, "gamma", "--k", "0", "--a", "1", "--digits", "30")
    assert code == 0
    assert out.splitlines()[0] == "0.577215664901532860606512090082"


def test_gamma_at_extremum(capsys):
    code, out, _ = run(capsys, "gamma", "--k", "1", "--a", "1.39112", "--digits", "10")
    assert code == 0
    assert abs(float(out.splitlines()[0]) - 0.0379557) < 1e-6


def test_gamma_recurrence_value(capsys):
    code, doc, _ = run_json(capsys, "gamma", "--k", "0", "--a", "2", "--digits", "20")
    assert code == 0
    assert {r["value"] for r in doc["results"]} == {"-0.42278433509846713939"}
    assert all(all(row) for row in doc["agreement"])


def test_value_strings_carry_requested_digits(capsys):
    code, doc, _ = run_json(capsys, "gamma", "--k", "3", "--a", "1/3", "--digits", "25")
    assert code == 0
    for r in doc["results"]:
        mantissa = r["value"].lstrip("-").split("e")[0].replace(".", "").lstrip("0")
        assert len(mantissa) == 25


def test_single_method_and_notice(capsys):
    code, doc, _ = run_json(capsys, "gamma", "--k", "2", "--a", "0.75", "--method", "prop4")
    assert code == 0
    assert [r["method"] for r in doc["results"]] == ["prop4"]
    code, doc, _ = run_json(capsys, "gamma", "--k", "2", "--a", "0.75")
    assert any(n.startswith("prop2i skipped") for n in doc["notices"])


def test_exit_domain(capsys):
    assert run(capsys, "gamma", "--k", "1", "--a", "1", "--method", "prop2i")[0] == 2
    assert run(capsys, "gamma", "--k", "1", "--a", "-1")[0] == 2
    assert run(capsys, "gamma", "--k", "1", "--a", "1", "--digits", "5")[0] == 2
    assert run(capsys, "gamma", "--k", "-1", "--a", "1")[0] == 2
    assert run(capsys, "gamma", "--k", "1", "--a", "abc")[0] == 2


def test_exit_nonconvergence(capsys):
    code, _, err = run(capsys, "gamma", "--k", "2", "--a", "2", "--method", "prop2ii", "--outer-terms", "3")
    assert code == 3
    assert "converge" in err


def test_exit_on_failing_check(capsys, monkeypatch):
    from stieltjes import checks

    forced = checks.Check("zz.forced-fail", frozenset({"prop9", "all"}), lambda d: (False, "forced"))
    monkeypatch.setitem(checks._CHECKS, forced.id, forced)
    code, out, err = run(capsys, "validate", "--suite", "prop9", "--digits", "25")
    assert code == 1
    assert "FAIL  zz.forced-fail" in out and "zz.forced-fail" in err


def test_validate_prop9(capsys):
    code, doc, _ = run_json(capsys, "validate", "--suite", "prop9", "--digits", "25")
    assert code == 0
    ids = [c["id"] for c in doc["checks"]]
    assert "correction≈0.0230957" in ids and ids == sorted(ids)
    assert all(c["pass"] for c in doc["checks"])


def test_validate_bounds(capsys):
    code, doc, _ = run_json(capsys, "validate", "--suite", "bounds", "--digits", "20")
    assert code == 0
    assert {f"bounds.n{n:02d}" for n in range(1, 31)} <= {c["id"] for c in doc["checks"]}


def test_validate_addition(capsys):
    code, out, _ = run(capsys, "validate", "--suite", "addition", "--digits", "40")
    assert code == 0
    assert "FAIL" not in out


def test_race_prop2ii_beats_prop2i(capsys):
    code, doc, _ = run_json(capsys, "race", "--k", "1", "--a", "1", "--digits", "40")
    assert code == 0
    names = [r["method"] for r in doc["results"]]
    assert "prop2i" not in names and any("prop2i skipped" in n for n in doc["notices"])
    times = [r["ms"] for r in doc["results"]]
    assert times == sorted(times)
    ii = next(r for r in doc["results"] if r["method"] == "prop2ii")
    _, doc2, _ = run_json(capsys, "gamma", "--k", "1", "--a", "2", "--method", "prop2i", "--digits", "40")
    assert ii["terms"] < doc2["results"][0]["terms"]


def test_race_agrees_at_three(capsys):
    code, doc, _ = run_json(capsys, "race", "--k", "0", "--a", "3", "--digits", "40")
    assert code == 0
    assert len({r["value"][:40] for r in doc["results"]}) == 1
    assert all(all(row) for row in doc["agreement"])


def test_race_domain_filtering(capsys):
    code, doc, _ = run_json(capsys, "race", "--k", "2", "--a", "0.75", "--digits", "30")
    assert code == 0
    names = {r["method"] for r in doc["results"]}
    assert {"prop2ii", "prop2iii", "reference"} <= names
    assert "prop2i" not in names


def test_csv_mirror(capsys):
    code, out, _ = run(capsys, "gamma", "--k", "1", "--a", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["kind"] == "result" for r in rows)
    assert set(rows[0]) == {"kind", "id", "value", "err_est", "terms", "ms", "pass", "detail"}


def test_dirichlet_command(capsys, tmp_path):
    f = tmp_path / "chi4.json"
    f.write_text(json.dumps({"modulus": 4, "values": [[1, 0], [0, 0], [-1, 0], [0, 0]]}))
    code, doc, _ = run_json(capsys, "dirichlet", "--character", str(f), "--K", "1")
    assert code == 0
    vals = {r["method"]: r["value"] for r in doc["results"]}
    assert vals["coeff0"].startswith("0.78539816339744830961")
    assert vals["coeff1"].startswith("0.1929013167969124293")


def test_dirichlet_bad_inputs(capsys, tmp_path):
    assert run(capsys, "dirichlet", "--character", str(tmp_path / "missing.json"))[0] == 2
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"modulus": 4, "values": [[1, 0], [1, 0], [-1, 0], [0, 0]]}))
    assert run(capsys, "dirichlet", "--character", str(f))[0] == 2


def test_seed_cache_option(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("STIELTJES_CACHE", raising=False)
    code, _, _ = run(capsys, "gamma", "--k", "0", "--a", "1", "--seed-cache", str(tmp_path))
    assert code == 0
    assert any(tmp_path.iterdir())
    env_dir = tmp_path / "env"
    env_dir.mkdir()
    monkeypatch.setenv("STIELTJES_CACHE", str(env_dir))
    assert run(capsys, "gamma", "--k", "0", "--a", "1")[0] == 0
    assert any(env_dir.iterdir())


def test_request_digits_range():
    with pytest.raises(DomainError):
        Request("gamma", 1, "1", digits=9)
    with pytest.raises(DomainError):
        Request("gamma", 1, "1", digits=10001)
    assert Request("gamma", 1, "1/3").a_exact.denominator == 3


def test_report_matrix_must_be_symmetric():
    req = Request("gamma", 1, "1")
    rs = (MethodResult("x", "1", "0", 1, 1.0), MethodResult("y", "1", "0", 1, 1.0))
    with pytest.raises(ValueError):
        Report(req, rs, agreement=((True, False), (True, True)))


_text = st.text(st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=20)


@given(
    st.sampled_from(["gamma", "race", "validate"]),
    st.integers(0, 50),
    st.integers(10, 10000),
    st.lists(st.tuples(_text, st.booleans(), _text), max_size=4),
    st.lists(st.tuples(_text, st.integers(0, 10**6), st.floats(0, 1e6, allow_nan=False)), max_size=3),
    st.lists(_text, max_size=3),
)
def test_json_round_trip(command, k, digits, checks, methods, notices):
    req = Request(command, k, "1/3", digits)
    results = tuple(MethodResult(m, "0.5", "1e-30", t, round(ms, 3), ("slow",)) for m, t, ms in methods)
    n = len(results)
    matrix = tuple(tuple(True for _ in range(n)) for _ in range(n)) if n > 1 else ()
    r = Report(req, results, tuple(CheckLine(*c) for c in checks), matrix, tuple(notices))
    assert from_json(to_json(r)) == r
