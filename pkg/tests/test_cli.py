import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from eqpatch import cli

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor_input_file(capsys):
    code, out, _ = run(["birkhoff", "factor", DATA / "cocycle_split.json", "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["exponents"] == [2, -1] and d["ok"] and "timestamp" in d


def test_reconstruct_input_file(capsys):
    code, out, _ = run(["birkhoff", "reconstruct", DATA / "cocycle_trivial.json", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["type"] == [0, 0]


@pytest.mark.parametrize(
    "argv",
    [
        ["modcat", "snf", DATA / "snf_matrix.json"],
        ["modcat", "tensor", DATA / "module_t2.json", DATA / "module_t3_free.json"],
        ["modcat", "hom", DATA / "module_t2.json", DATA / "module_t3_free.json"],
        ["eq", "kernel", DATA / "eq_morphism_t.json"],
        ["eq", "cokernel", DATA / "eq_morphism_t.json"],
        ["patch", "glue", DATA / "eq_object_t.json"],
        ["fincat", "verify", DATA / "fincat_bz2.json"],
    ],
)
def test_file_commands_pass(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and out.rstrip().endswith("PASS")


def test_tensor_invariants(capsys):
    code, out, _ = run(["modcat", "tensor", DATA / "module_t2.json", DATA / "module_t3_free.json", "--format", "json"], capsys)
    inv = json.loads(out)["invariants"]
    assert inv["rank"] == 0 and len(inv["torsion"]) == 2


def test_mutant_report_fails_with_exit_one(capsys):
    code, out, _ = run(["mv", "report", "--seed", "0", "--samples", "10", "--context", "p1", "--group", "gl2", "--mutation", "naive"], capsys)
    assert code == 1 and out.rstrip().endswith("FAIL")


@pytest.mark.parametrize(
    "argv",
    [
        ["birkhoff", "factor", "--seed", "0", "--samples", "0"],
        ["eq", "check-coherence"],
        ["mv", "report", "--seed", "0", "--group", "so3"],
        ["modcat", "tensor", DATA / "module_t2.json"],
        ["birkhoff", "factor", DATA / "cocycle_split.json", "--field", "f4"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    # argparse exits on its own; everything else returns the code
    try:
        code = cli.main([str(a) for a in argv])
    except SystemExit as e:
        code = e.code
    assert code == 2


def test_malformed_input_points_at_field(tmp_path, capsys):
    d = json.loads((DATA / "cocycle_split.json").read_text())
    d["matrix"]["entries"][0][0]["coeffs"] = ["1", "x"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, _, err = run(["birkhoff", "factor", p], capsys)
    assert code == 2 and "$.matrix.entries[0][0].coeffs[1]" in err


def test_broken_json_exit_two(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{")
    code, _, err = run(["birkhoff", "factor", p], capsys)
    assert code == 2 and "broken.json:1" in err


def test_budget_exhaustion_exit_three(capsys):
    code, _, err = run(["fincat", "verify", DATA / "fincat_bz2.json", "--budget", "3"], capsys)
    assert code == 3 and "BudgetExceeded" in err


def test_out_dir_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path))
    code, _, _ = run(["birkhoff", "reconstruct", "--seed", "3", "--samples", "3"], capsys)
    assert code == 0
    rep = json.loads((tmp_path / "birkhoff-reconstruct-seed3.json").read_text())
    assert rep["seed"] == 3 and rep["command"] == "birkhoff reconstruct"


def test_same_seed_same_report(tmp_path, capsys):
    texts = []
    for i in range(2):
        out = tmp_path / str(i)
        run(["eq", "check-exactness", "--seed", "5", "--samples", "12", "--out", out], capsys)
        texts.append((out / "eq-check-exactness-seed5.json").read_text())
    assert cli.strip_timestamp(texts[0]) == cli.strip_timestamp(texts[1])


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "eqpatch.cli", "birkhoff", "factor", str(DATA / "cocycle_split.json")], capture_output=True, text=True, env={**os.environ})
    assert r.returncode == 0 and "PASS" in r.stdout
