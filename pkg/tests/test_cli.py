import json
import subprocess
import sys

import pytest

from vdgv import cli, grid
from vdgv.cli import parse_coeffs, run

RUN = ["--p0", "3", "--f", "1", "--p", "3", "--R", "-1;1"]
CHAR2 = ["--p0", "2", "--f", "2", "--p", "2", "--R", "0;1"]


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_coeffs():
    assert parse_coeffs("2;1") == [[2], [1]]
    assert parse_coeffs("0,1;1,0") == [[0, 1], [1, 0]]
    assert parse_coeffs("-1;1") == [[-1], [1]]


def test_analyze_running(capsys):
    code, out, _ = invoke(capsys, "analyze", *RUN)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "vdgv-report/1"
    assert rep["L"]["coeffs"] == [1, 6, 18, 36, 54, 54, 27]
    assert rep["verdicts"]["maximal_at"] == [6]
    assert rep["verdicts"]["minimal_at"] == [12]
    assert rep["checks"]["sum_rule"] is True


def test_negative_value_forms_agree(capsys):
    _, a, _ = invoke(capsys, "analyze", *RUN)
    _, b, _ = invoke(capsys, "analyze", "--p0", "3", "--f", "1", "--p", "3", "--R=-1;1")
    _, c, _ = invoke(capsys, "analyze", "--p0", "3", "--f", "1", "--p", "3", "--R", "2;1")
    assert a == b
    assert json.loads(a)["L"] == json.loads(c)["L"]


def test_output_is_deterministic(capsys):
    _, a, _ = invoke(capsys, "analyze", *RUN)
    _, b, _ = invoke(capsys, "analyze", *RUN, "--jobs", "3")
    assert a == b
    assert a.endswith("}\n")


def test_analyze_char2(capsys):
    code, out, _ = invoke(capsys, "analyze", *CHAR2)
    assert code == 0
    rep = json.loads(out)
    assert rep["L"]["coeffs"] == [1, 4, 4]
    assert rep["verdicts"]["theorem_checks"]["mainc"]["holds"]


def test_count(capsys):
    code, out, _ = invoke(capsys, "count", *RUN, "--n", "6")
    assert code == 0 and json.loads(out)["N"] == 892


def test_tau_and_quotient(capsys):
    code, out, _ = invoke(capsys, "tau", *RUN)
    assert code == 0 and len(json.loads(out)["tau"]) == 6  # 2 characters psi times 3 of xi
    code, out, _ = invoke(capsys, "quotient", *RUN)
    assert code == 0 and "quotient" in json.loads(out)


def test_out_and_timings(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = invoke(capsys, "analyze", *RUN, "--out", str(target))
    assert code == 0 and out == ""
    plain = target.read_text()
    assert "timings" not in json.loads(plain)
    invoke(capsys, "analyze", *RUN, "--out", str(target), "--timings")
    timed = json.loads(target.read_text())
    assert "timings" in timed
    del timed["timings"]
    assert timed == json.loads(plain)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "--p0", "4", "--f", "1", "--p", "4", "--R", "1"], 2),
        (["analyze", "--p0", "3", "--f", "1", "--p", "9", "--R", "1"], 2),
        (["analyze", "--p0", "3", "--f", "1", "--p", "3", "--R", "x"], 2),
        (["analyze", "--p0", "3", "--f", "1", "--p", "3", "--R", "0,-1;1"], 2),
        (["analyze", "--p0", "3"], 2),
        (["bogus"], 2),
        (["analyze", "--p0", "2", "--f", "1", "--p", "2", "--R", "1"], 3),
        (["analyze", "--p0", "3", "--f", "1", "--p", "3", "--R", "1;1"], 3),
        (["count", *RUN, "--n", "30"], 5),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = invoke(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.startswith("vdgv:") or "usage" in err


def test_force_lifts_guard_check_only(capsys, monkeypatch):
    # --force is honoured: the guard no longer fires (we stop before enumerating)
    from vdgv import lfunc

    def boom(self, n, force=False):
        assert force
        raise lfunc.InputError("stopped")

    monkeypatch.setattr(lfunc.Counter, "count", boom)
    code, _, _ = invoke(capsys, "count", *RUN, "--n", "30", "--force")
    assert code == 2


def test_verify_single(capsys):
    code, out, _ = invoke(capsys, "verify", *RUN)
    rep = json.loads(out)
    assert code == 0 and rep["all_pass"]
    statuses = {v["status"] for v in rep["curves"][0]["suites"].values()}
    assert statuses <= {"pass", "skipped"}


def test_verify_char2_skips_odd_suites(capsys):
    code, out, _ = invoke(capsys, "verify", *CHAR2)
    suites = json.loads(out)["curves"][0]["suites"]
    assert code == 0
    assert suites["cd"]["status"] == "skipped"
    assert suites["tau_routes"]["status"] == "pass"


def test_verify_grid(capsys, monkeypatch):
    from vdgv.lfunc import make_spec

    monkeypatch.setattr(grid, "grid_specs", lambda name: [make_spec(**grid.RUNNING), make_spec(**grid.CHAR2)])
    code, out, _ = invoke(capsys, "verify", "--grid", "small")
    rep = json.loads(out)
    assert code == 0 and rep["grid"] == "small" and len(rep["curves"]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vdgv", "count", *RUN, "--n", "2"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["N"] == 10  # s_2 of the reciprocal roots is 0


def test_dumps_sorted():
    assert cli.dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
