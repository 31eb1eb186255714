import json
import subprocess
import sys

import pytest

from wmbkit import cli
from wmbkit.constructors import PAIR2_TEXT


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pair2_json(capsys):
    code, out, _ = run(["verify", "--catalog", "PAIR2", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["instance"] == {"name": "PAIR2", "backend": "dense-finite", "dim": 4,
                               "flags": rep["instance"]["flags"]}
    assert all(r["status"] != "fail" for r in rep["laws"])
    assert {"id", "anchor", "status", "mode"} <= set(rep["laws"][0])


def test_verify_lazy_reports_samples(capsys):
    code, out, _ = run(["verify", "--catalog", "ZFUN", "--seed", "7", "--samples", "500", "--format", "json"],
                       capsys)
    assert code == 0
    laws = [r for r in json.loads(out)["laws"] if r["status"] == "pass"]
    assert all(r["mode"] == "sampled(n=500, seed=7)" and r["samples"] == 500 and r["seed"] == 7 for r in laws)


def test_bad_presentation_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.cat"
    f.write_text("category X\nobjects a\narrow f : a => a\n")
    code, out, err = run(["verify", "--cat", str(f)], capsys)
    assert code == 2
    assert "SyntaxError" in err and "bad.cat:3:13" in err


def test_invalid_category_exit_2(tmp_path, capsys):
    f = tmp_path / "v.cat"
    f.write_text("category X\nobjects a\narrow f : a -> a\n")
    code, _, err = run(["verify", "--cat", str(f)], capsys)
    assert code == 2 and "ValidationError" in err


def test_cat_file_both_constructions(tmp_path, capsys):
    f = tmp_path / "p.cat"
    f.write_text(PAIR2_TEXT)
    for c in ("span", "functional"):
        code, _, _ = run(["verify", "--cat", str(f), "--construction", c, "--laws", "axioms"], capsys)
        assert code == 0


def test_unknown_inputs(capsys):
    assert run(["verify", "--catalog", "NOPE"], capsys)[0] == 2
    assert run(["verify", "--catalog", "C2", "--laws", "AX-xx"], capsys)[0] == 2
    assert run(["verify"], capsys)[0] == 2


def test_failing_law_exit_1(capsys, monkeypatch):
    from wmbkit import constructors
    bad = constructors.corrupt_counit(constructors.catalog("C2"))
    monkeypatch.setattr(cli.constructors, "catalog", lambda name: bad)
    code, out, _ = run(["verify", "--catalog", "C2", "--laws", "axioms"], capsys)
    assert code == 1 and "FAIL" in out and "witness" in out


def test_expect_found_gates_exit(capsys):
    code, out, _ = run(["antipode", "--catalog", "CYC3MON", "--expect-found"], capsys)
    assert code == 1 and "Failed{KernelMismatch}" in out


def test_antipode_commands(capsys):
    code, out, _ = run(["antipode", "--catalog", "PAIR2"], capsys)
    assert code == 0 and "antipode: Found" in out and "S((1,2)) = [[\"(2,1)\", \"1\"]]" in out
    code, out, _ = run(["antipode", "--catalog", "IDEM2"], capsys)
    assert code == 0 and "Failed{KernelMismatch}" in out and "witness" in out


def test_base_command(capsys):
    code, out, _ = run(["base", "--catalog", "PAIR2", "--format", "json"], capsys)
    assert code == 0
    b = json.loads(out)["base"]
    assert b["dim"] == 2 and b["nakayama"] == [["1", "0"], ["0", "1"]]
    assert b["E_F"] == "pass"
    code, out, _ = run(["base", "--catalog", "ZFUN"], capsys)
    assert code == 0 and "lazy" in out


def test_out_file(tmp_path, capsys):
    f = tmp_path / "r.json"
    assert cli.main(["verify", "--catalog", "C2", "--format", "json", "--out", str(f)]) == 0
    assert json.loads(f.read_text())["instance"]["name"] == "C2"


@pytest.mark.parametrize("cmd", ["verify", "antipode", "base"])
def test_json_is_byte_identical_across_processes(cmd):
    outs = set()
    for seed in ("1", "2"):
        p = subprocess.run([sys.executable, "-m", "wmbkit", cmd, "--catalog", "SUMINF_C2", "--format", "json"],
                           capture_output=True, env={"PYTHONHASHSEED": seed}, check=True)
        outs.add(p.stdout)
    assert len(outs) == 1
