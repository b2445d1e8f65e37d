from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cptensor.cli import main, replay, run_command

from .conftest import FIXTURES

EX1 = str(FIXTURES / "ex_m3_1.sst")


def test_check_pass():
    status, text = run_command(["check", EX1])
    assert status == 0
    assert "hierarchical dominance: PASS\n" in text
    assert text.endswith("result: PASS\n")


def test_check_not_strongly_symmetric():
    status, text = run_command(["check", str(FIXTURES / "nonsym.dst")])
    assert status == 1
    assert "witness (1, 1, 2) ~ (1, 2, 2)" in text


def test_check_lowered(tmp_path):
    f = tmp_path / "low.sst"
    f.write_text((FIXTURES / "ex_m3_1.sst").read_text().replace("\n2 5\n", "\n2 2\n"))
    status, text = run_command(["check", str(f)])
    assert status == 1
    assert "hierarchical: ((2,),) lhs=2 rhs=5" in text


def test_decompose():
    status, text = run_command(["decompose", EX1, "--trace"])
    assert status == 0
    assert "terms (16):" in text and "1.2599 : 9\n" in text
    assert "residual: 0" in text and "rank bound: 175" in text
    assert "A^(3): 0" in text


def test_decompose_negative(tmp_path):
    f = tmp_path / "neg.sst"
    f.write_text("sst 2 2\n1 1\n2 1\n1 2 2\n")
    status, text = run_command(["decompose", str(f)])
    assert status == 1
    assert "factors: unavailable" in text


def test_decompose_json():
    status, text = run_command(["decompose", EX1, "--json"])
    payload = json.loads(text)
    assert status == 0 and payload["bound"] == 175 and len(payload["terms"]) == 16


def test_decompose_nonsym():
    status, text = run_command(["decompose", str(FIXTURES / "nonsym.dst")])
    assert status == 1 and text.startswith("NotStronglySymmetric")


def test_spectral():
    status, text = run_command(["spectral", str(FIXTURES / "ex_m4_1.sst")])
    assert status == 0
    assert "CP spectral properties: PASS" in text


def test_duality_default_and_file(tmp_path):
    status, text = run_command(["duality", str(FIXTURES / "ex_m4_3.sst")])
    assert status == 0 and "A . B = 1692" in text
    bad = tmp_path / "b.dst"
    bad.write_text("dst 3 10\n1 1 1 1\n1 1 2 -5\n")
    status, text = run_command(["duality", EX1, str(bad)])
    assert status == 1 and "not copositive" in text
    wrong = tmp_path / "w.dst"
    wrong.write_text("dst 2 2\n1 1 1\n")
    assert run_command(["duality", EX1, str(wrong)])[0] == 2


def test_examples_command():
    status, text = run_command(["paper-examples"])
    assert status == 0
    assert text.endswith("6/6 tables reproduced\n")


def test_errors(tmp_path):
    assert run_command(["check", str(tmp_path / "missing.sst")])[0] == 2
    f = tmp_path / "bad.sst"
    f.write_text("sst 3 3\n1 x\n")
    status, text = run_command(["check", str(f)])
    assert status == 2 and text.startswith("error:")
    assert run_command(["nonsense"])[0] == 2
    assert run_command([])[0] == 2


def test_manifest_replay(tmp_path):
    path = tmp_path / "run.json"
    status, text = run_command(["paper-examples", "--manifest", str(path)])
    manifest = json.loads(path.read_text())
    assert manifest["argv"] == ["paper-examples"] and manifest["status"] == status
    status2, text2, same = replay(path)
    assert (status2, text2, same) == (status, text, True)


def test_main(capsys):
    assert main(["check", EX1]) == 0
    assert "result: PASS" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cptensor", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()


@pytest.mark.parametrize("flag", ["--precision", "--backend"])
def test_bad_choice(flag):
    assert run_command(["decompose", EX1, flag, "bogus"])[0] == 2
