import json
import subprocess
import sys

import pytest

from rbca import pbm
from rbca.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_pbm_file(tmp_path, capsys):
    path = tmp_path / "d.pbm"
    code, out, _ = run(capsys, "simulate", "--n", "64", "--dist", "uniform", "--seed", "1",
                       "--steps", "32", "--format", "pbm", "--out", str(path))
    assert code == 0
    assert out.startswith("preperiod=")
    rows = pbm.read_pbm(path)
    assert rows.shape == (33, 64)
    manifest = json.loads((tmp_path / "d.pbm.manifest.json").read_text())
    assert manifest["seed"] == 1 and manifest["command"] == "simulate"


def test_simulate_is_deterministic(tmp_path, capsys):
    blobs = []
    for name in ("a", "b"):
        path = tmp_path / f"{name}.pbm"
        run(capsys, "simulate", "--n", "40", "--seed", "9", "--steps", "20", "--binary",
            "--out", str(path))
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1] and blobs[0].startswith(b"P4")


def test_simulate_explicit_csv(capsys):
    code, out, err = run(capsys, "simulate", "--n", "4", "--rules", "6,6,6,6", "--init", "1000",
                         "--steps", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["t,c0,c1,c2,c3", "0,1,0,0,0", "1,0,1,0,1", "2,0,0,0,0"]
    assert "stable_fraction=1.000000" in err


def test_estimate_csv(capsys):
    argv = ("estimate", "--n", "12", "--dist", "uniform", "--samples", "50", "--seed", "3")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    header, row = out.splitlines()
    assert header == "n,mode,estimate,stderr,ci95,samples,seed,distribution"
    assert row.startswith("12,monte-carlo,") and row.endswith(",50,3,uniform")
    assert run(capsys, *argv)[1] == out


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--n", "8", "--dist", "uniform-on:12")
    assert code == 0
    assert out.splitlines()[-1] == "exact=1/128 dyadic=1/2^7"
    code, out, _ = run(capsys, "exact", "--n", "5", "--support", "3")
    assert out.splitlines()[-1] == "exact=0 dyadic=0/2^0"


def test_exact_budget_exit_code(capsys):
    code, _, err = run(capsys, "exact", "--n", "6", "--dist", "uniform", "--budget", "100")
    assert code == 3 and "budget" in err


def test_blocks_verify(capsys):
    code, out, _ = run(capsys, "blocks", "verify", "--phi", "2,9,9,2", "--b", "0010")
    assert code == 0
    assert out.strip() == "phi=(2,9,9,2) b=(0,0,1,0) kind=impermeable period=1 stable=1111"
    code, out, _ = run(capsys, "blocks", "verify", "--phi", "6,6", "--b", "01")
    assert code == 1 and "kind=neither" in out


def test_blocks_verify_family(capsys):
    code, out, _ = run(capsys, "blocks", "verify", "--phi", "2,2,2,6,6,6,2,2,2,6,6,6,2,2,2,2",
                       "--family", "001101010110????", "--forbid", "xz=11,yw=11", "--center", "4")
    assert code == 0
    first, second = out.splitlines()
    assert "kind=absorbing" in first and "center_constant=true" in first
    assert second == "recurrence=4,8"


def test_blocks_search(capsys):
    code, out, _ = run(capsys, "blocks", "search", "--support", "2,3,11", "--pmax", "6")
    assert code == 0 and out.strip() == "no witness up to p=6"
    code, out, _ = run(capsys, "blocks", "search", "--support", "2,4", "--pmax", "2")
    assert out.strip() == "phi=(2,4) b=(0,0) kind=impermeable period=1 stable=11"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--support", "6,9")
    assert code == 0 and out.strip() == "sigma_star=0 (subset of {3,6,9,12})"


def test_repro(capsys):
    code, out, _ = run(capsys, "repro", "--suite", "table2")
    assert code == 0 and out.splitlines()[-1] == "PASS table2 (criterion 1)"


@pytest.mark.parametrize("argv", [
    ("repro", "--suite", "nope"),
    ("estimate", "--n", "10", "--dist", "weights:0=0.3"),
    ("classify", "--support", "3,99"),
    ("blocks", "verify", "--phi", "2,3", "--b", "011"),
    ("exact", "--n", "4", "--dist", "weights:0=0.25,1=0.75"),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["simulate"])
    assert err.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rbca", "classify", "--support", "0"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("sigma_star>0")


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("RBCA_THREADS", "2")
    code, out, _ = run(capsys, "estimate", "--n", "10", "--samples", "40", "--seed", "1")
    monkeypatch.setenv("RBCA_THREADS", "1")
    assert run(capsys, "estimate", "--n", "10", "--samples", "40", "--seed", "1")[1] == out
