import json
import os
import subprocess

import pytest

CLI = os.environ.get("CQLAB_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="CQLAB_CLI not set")


def run(*args, cwd):
    return subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)


def test_exit_codes(tmp_path):
    assert run("enumerate", "--xmax", "50", "--out", str(tmp_path), cwd=tmp_path).returncode == 0
    assert (tmp_path / "family_cubic_50.csv").exists()
    assert run("experiment", "bogus", cwd=tmp_path).returncode == 2
    assert run("enumerate", "--family", "sextic", cwd=tmp_path).returncode == 2
    assert run("lvalues", "--xmax", "-3", cwd=tmp_path).returncode == 2
    missing = run("experiment", "first-moment", "--xsweep", "500", "--cache", "none.csv", cwd=tmp_path)
    assert missing.returncode == 1
    assert "lvalues --xmax" in missing.stderr


def test_pipeline(tmp_path):
    assert run("lvalues", "--family", "quartic", "--xmax", "400", "--threads", "1", cwd=tmp_path).returncode == 0
    out = run("experiment", "moments", "--family", "quartic", "--xsweep", "200,400", "--k", "0.5,1",
              cwd=tmp_path)
    assert out.returncode == 0, out.stderr
    report = json.loads((tmp_path / "moments_quartic_400.json").read_text())
    assert report["family"] == "quartic"
    assert (tmp_path / "moments_quartic_400.csv").read_text().startswith("X,parameter,")
    constants = run("constants", "--family", "quartic", cwd=tmp_path)
    assert constants.returncode == 0
    assert "c_K" in json.loads(constants.stdout)
