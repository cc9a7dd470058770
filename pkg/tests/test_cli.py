import json
import math
import subprocess
import sys

import numpy as np
import pytest

from solidharmonics import cli, quadrature


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *args):
    code, out, _ = run(capsys, *args)
    return code, json.loads(out)


def test_eval_examples(capsys):
    code, rep = run_json(capsys, "eval", "--l", "0", "--m", "0", "--theta", "1", "--phi", "1")
    assert code == 0 and rep["command"] == "eval"
    assert np.isclose(rep["result"]["re"], 0.2820947918)
    code, rep = run_json(capsys, "eval", "--l", "1", "--m", "0", "--theta", "0", "--phi", "0")
    assert np.isclose(rep["result"]["re"], math.sqrt(3 / (4 * math.pi)))
    code, _, err = run(capsys, "eval", "--l", "2", "--m", "3", "--theta", "1", "--phi", "1")
    assert code == 2 and "invalid" in err
    code, rep = run_json(capsys, "eval", "--l", "1", "--m", "0", "--x", "0", "--y", "0", "--z", "2",
                         "--kind", "irregular")
    assert np.isclose(rep["result"]["re"], math.sqrt(3 / (4 * math.pi)) / 4)


def test_eval_domain_and_usage_errors(capsys):
    code, _, _ = run(capsys, "eval", "--l", "1", "--m", "0", "--x", "0", "--y", "0", "--z", "0",
                     "--kind", "irregular")
    assert code == 3
    code, _, _ = run(capsys, "eval", "--l", "1", "--m", "0", "--kind", "regular")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "--l", "x"])
    assert exc.value.code == 2


@pytest.mark.parametrize("suite,lmax,seed", [("addition", 8, 7), ("gaunt", 6, 1), ("rotation", 5, 3)])
def test_check_examples(capsys, suite, lmax, seed):
    code, rep = run_json(capsys, "check", "--suite", suite, "--l-max", str(lmax), "--seed", str(seed))
    assert code == 0
    assert rep["max_residual"] < rep["result"]["tolerance"]
    if suite == "addition":
        assert rep["max_residual"] < 1e-12


def test_check_tolerance_breach(capsys, monkeypatch):
    from solidharmonics import checks
    monkeypatch.setitem(checks.SUITES, "addition",
                        lambda l_max, rng: checks.SuiteResult("addition", 1.0, 1e-12, 1))
    code, rep = run_json(capsys, "check", "--suite", "addition", "--l-max", "2")
    assert code == 1 and rep["result"]["passed"] is False


def test_project_examples(capsys, tmp_path):
    code, rep = run_json(capsys, "project", "--builtin", "cos-theta", "--l-max", "4")
    assert list(rep["result"]["coefficients"]) == ["1,0"]
    assert np.isclose(rep["result"]["coefficients"]["1,0"]["re"], math.sqrt(4 * math.pi / 3))
    code, rep = run_json(capsys, "project", "--builtin", "Y32", "--l-max", "5")
    assert list(rep["result"]["coefficients"]) == ["3,2"]
    assert np.isclose(rep["result"]["coefficients"]["3,2"]["re"], 1)
    bad = tmp_path / "bad.csv"
    bad.write_text("theta,phi\n1,2\n")
    code, _, _ = run(capsys, "project", "--input", str(bad), "--l-max", "2")
    assert code == 2
    code, _, _ = run(capsys, "project", "--builtin", "sin-phi", "--l-max", "2")
    assert code == 2


def test_project_csv_round_trip(capsys, tmp_path):
    code, grid_csv, _ = run(capsys, "grid", "--l-max", "4")
    lines = grid_csv.splitlines()
    rows = [list(map(float, l.split(","))) for l in lines[1:]]
    samples = tmp_path / "s.csv"
    samples.write_text("# theta,phi,value\n" + "\n".join(f"{t!r},{p!r},{math.cos(t) ** 2!r}" for t, p, _ in rows))
    code, rep = run_json(capsys, "project", "--input", str(samples), "--l-max", "4")
    assert code == 0
    c = quadrature.SHCoefficients.from_json(rep["result"])
    assert np.isclose(c[(0, 0)], math.sqrt(4 * math.pi) / 3)
    assert np.isclose(c[(2, 0)], 2 / 3 * math.sqrt(4 * math.pi / 5))
    short = tmp_path / "short.csv"
    short.write_text("\n".join(f"{t!r},{p!r},1.0" for t, p, _ in rows[:-1]))
    assert run(capsys, "project", "--input", str(short), "--l-max", "2")[0] == 2


def test_energy_command(capsys, tmp_path):
    c1, c2 = tmp_path / "a.csv", tmp_path / "b.csv"
    c1.write_text("# x,y,z,q\n0,0,0.1,1\n")
    c2.write_text("0,0,-0.1,1\n")
    code, rep = run_json(capsys, "energy", "--charges1", str(c1), "--charges2", str(c2),
                         "--r", "0,0,2", "--l-max", "12")
    assert code == 0
    assert abs(rep["result"]["energy"] - 1 / 1.8) < 1e-8
    assert rep["max_residual"] < 1e-8
    c2.write_text("0,0,oops,1\n")
    assert run(capsys, "energy", "--charges1", str(c1), "--charges2", str(c2), "--r", "0,0,2",
               "--l-max", "4")[0] == 2


def test_image_3j_gaunt_planewave(capsys):
    code, rep = run_json(capsys, "image", "--a", "1", "--R", "0,0,2", "--q", "1")
    assert rep["result"] == {"q_img": -0.5, "pos": [0.0, 0.0, 0.5]}
    assert run(capsys, "image", "--a", "1", "--R", "0,0,0.5", "--q", "1")[0] == 3
    code, rep = run_json(capsys, "3j", "--triple", "1,0,1,0,0,0")
    assert np.isclose(rep["result"], -0.5773502692)
    code, rep = run_json(capsys, "gaunt", "--triple", "2,0,1,0,1,0")
    assert np.isclose(rep["result"], 0.2523132522)
    assert run(capsys, "3j", "--triple", "1,0,1")[0] == 2
    code, rep = run_json(capsys, "planewave", "--k", "0,0,1", "--r", "0,0,1", "--lmax", "20")
    v = complex(rep["result"]["value"]["re"], rep["result"]["value"]["im"])
    assert abs(v - np.exp(1j)) < 1e-12


def test_batch_csv(capsys, tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("# triples\n1,0,1,0,0,0\n2,0,1,0,1,0\n")
    code, out, _ = run(capsys, "gaunt", "--batch", str(f))
    lines = out.splitlines()
    assert lines[0] == "lb,mb,lc,mc,ld,md,value"
    assert np.isclose(float(lines[2].split(",")[-1]), 0.2523132522)


def test_rotate_and_wigner_d(capsys, tmp_path):
    c = quadrature.SHCoefficients(2, {(1, 0): 1.0, (2, -1): 0.5j})
    f = tmp_path / "c.json"
    f.write_text(c.to_json())
    code, rep = run_json(capsys, "rotate", "--coeffs", str(f), "--euler", "0,0,0")
    assert quadrature.SHCoefficients.from_json(rep["result"]).max_abs_diff(c) < 1e-15
    code, rep = run_json(capsys, "wigner-d", "--l", "1", "--euler", "0,0.7,0")
    assert np.isclose(rep["result"]["rows"][1][1]["re"], math.cos(0.7))
    f.write_text("{not json")
    assert run(capsys, "rotate", "--coeffs", str(f), "--euler", "0,0,0")[0] == 2


def test_deterministic_output_and_timing(capsys):
    args = ["check", "--suite", "addition", "--l-max", "4", "--seed", "5"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert "elapsed_s" not in json.loads(a)
    _, rep = run_json(capsys, "--timing", *args)
    assert rep["elapsed_s"] >= 0


def test_pretty_table(capsys):
    code, out, _ = run(capsys, "--pretty", "eval", "--l", "1", "--m", "1", "--theta", "1", "--phi", "2")
    assert code == 0
    assert out.splitlines()[0].split() == ["command", '"eval"']
    assert any(line.startswith("result") and line.endswith("i") for line in out.splitlines())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "solidharmonics", "3j", "--triple", "0,0,0,0,0,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == 1.0


def test_project_output_feeds_rotate(capsys, tmp_path):
    _, out, _ = run(capsys, "project", "--builtin", "Y32", "--l-max", "3")
    f = tmp_path / "report.json"
    f.write_text(out)
    code, rep = run_json(capsys, "rotate", "--coeffs", str(f), "--euler", "0.5,0,0")
    assert code == 0
    c = rep["result"]["coefficients"]["3,2"]
    assert np.isclose(complex(c["re"], c["im"]), np.exp(-2j * 0.5))
