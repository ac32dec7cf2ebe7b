import json
import subprocess
import sys

import pytest


@pytest.mark.slow
def test_module_entry_point(tmp_path):
    out = tmp_path / "reduce.json"
    cmd = [sys.executable, "-m", "saddle_dynamics", "reduce", "--alpha", "0.7853981634", "--out", str(out)]

    print(f"\n=== Running: {' '.join(cmd)} ===")
    result = subprocess.run(cmd, capture_output=True, text=True, check=False)
    print(result.stdout)
    print(result.stderr, file=sys.stderr)

    assert result.returncode == 0, f"saddle-dynamics failed with exit code {result.returncode}"
    assert result.stdout.strip() == "r0=0.840896 stable_branch=plus"
    assert json.loads(out.read_text())["stable_branch"] == "plus"


@pytest.mark.slow
def test_module_entry_point_reports_invalid_input():
    cmd = [sys.executable, "-m", "saddle_dynamics", "simulate", "--model", "nosuch", "--x0", "0.1"]
    result = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert result.returncode == 2
    assert "invalid input" in result.stderr
