import json
import subprocess
import sys

import pytest

from uvbeta.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_stokes(capsys):
    code, out, _ = run(["stokes", "--beta", "0.5"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["l"] == 1
    assert d["angles"] == pytest.approx([1.5707963, -1.5707963], abs=1e-7)


def test_beta_out_of_range(capsys):
    code, _, err = run(["solve", "--beta", "1.5"], capsys)
    assert code == 1 and "beta out of range" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 1
    code, _, err = run(["verify", "--suite", "bogus"], capsys)
    assert code == 1 and "oracle" in err and "ml-identity" in err
    code, _, err = run(["table", "--beta", "0.6", "--points", "1"], capsys)
    assert code == 1 and "points" in err


def test_solve_round_trip_and_table(tmp_path, capsys):
    g = tmp_path / "g.json"
    code, out, _ = run(["solve", "--beta", "0.6", "--tol", "1e-10", "--out", str(g)], capsys)
    assert code == 0 and json.loads(out)["residual"] < 1e-9
    from uvbeta import SolutionGrid
    grid = SolutionGrid.from_json(g.read_text())
    assert grid.to_json() == g.read_text()

    t1, t2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["table", "--grid", str(g), "--xmin", "0", "--xmax", "50", "--points", "201"]
    assert main(args + ["--out", str(t1)]) == 0
    assert main(args + ["--out", str(t2)]) == 0
    assert t1.read_bytes() == t2.read_bytes()
    lines = t1.read_text().splitlines()
    assert lines[0] == "x,re,im"
    first = lines[1].split(",")
    assert float(first[1]) == grid.interpolate(0.0).real
    vals = [float(l.split(",")[1]) for l in lines[1:]]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(l.endswith(",0") for l in lines[1:])


def test_v_table_tail(capsys):
    code, out, _ = run(["table", "--beta", "0.6", "--fn", "v", "--xmax", "200", "--points", "5"],
                       capsys)
    rows = [list(map(float, l.split(","))) for l in out.splitlines()[1:]]
    assert abs(rows[-1][1] - 1) < abs(rows[0][1] - 1)


def test_config_merge(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"beta": 0.7, "points": 3, "fn": "v"}))
    _, a, _ = run(["table", "--config", str(cfg)], capsys)
    _, b, _ = run(["table", "--config", str(cfg), "--beta", "0.5"], capsys)
    assert len(a.splitlines()) == 4 and a != b
    cfg.write_text(json.dumps({"colour": 1}))
    code, _, err = run(["table", "--config", str(cfg)], capsys)
    assert code == 1 and "colour" in err


def test_eval_connection(capsys):
    code, out, _ = run(["eval", "--fn", "u", "--beta", "0.6", "--r", "2", "--phi", "3.14159"],
                       capsys)
    d = json.loads(out)
    assert code == 0 and d["connection_residual"] < 1e-7
    code, out, _ = run(["eval", "--fn", "L", "--beta", "0.6", "--r", "2", "--arg-sheet", "7.0"],
                       capsys)
    assert code == 0 and "value" in json.loads(out)


def test_ml(capsys):
    code, out, _ = run(["ml", "--alpha", "1.428571", "--z", "2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["abs_diff"] < 1e-6
    assert any(r["retained"] for r in d["rows"])


def test_gbeta_and_coeffs(capsys):
    code, out, _ = run(["gbeta", "--beta", "0.5", "--r", "1"], capsys)
    d = json.loads(out)
    assert set(d) >= {"z", "value", "method", "err_est"}
    assert d["z"]["arg_sheet"] == 0
    code, out, _ = run(["gbeta", "--beta", "0.5", "--r", "0.01", "--method", "small-z"], capsys)
    assert code == 1
    code, out, _ = run(["coeffs", "--beta", "0.6", "--kmax", "2"], capsys)
    rows = json.loads(out)["coefficients"]
    assert [r["k"] for r in rows] == [1, 2] and rows[0]["re"] > 0


def test_picard_below_critical(capsys):
    code, _, err = run(["solve", "--beta", "0.3", "--method", "picard"], capsys)
    assert code == 1 and "beta_c" in err


def test_verify_oracle(capsys):
    code, out, _ = run(["verify", "--suite", "oracle", "--beta", "0.9"], capsys)
    d = json.loads(out)
    assert code == 0 and d["passed"]


def test_info(capsys):
    code, out, _ = run(["info", "--beta", "0.3"], capsys)
    d = json.loads(out)
    assert d["picard_available"] is False and d["origin_class"] == "power"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "uvbeta", "stokes", "--beta", "0.25"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["l"] == 1
