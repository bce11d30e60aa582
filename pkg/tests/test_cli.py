import json
import subprocess
import sys
from pathlib import Path

import pytest

from coneperturb.cli import load_config, main
from coneperturb.errors import ConfigError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_examples_spin_factor(capsys):
    code, out, _ = run(capsys, "examples", "--name", "spin-factor", "--seed", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["seed"] == 1


def test_examples_unknown_name(capsys):
    code, _, err = run(capsys, "examples", "--name", "nope")
    assert code == 2 and "unknown scenario" in err


def test_witness_lorentz(capsys):
    code, out, _ = run(capsys, "witness", "--config", str(CONFIGS / "lorentz.toml"))
    assert code == 0
    rec = json.loads(out)
    assert rec["found"] and rec["strategy"] == "Direct"
    assert rec["y_margin"] >= -1e-9 and rec["x_margin"] < -1e-6


def test_witness_text_format(capsys):
    code, out, _ = run(capsys, "witness", "--config", str(CONFIGS / "lorentz.toml"), "--format", "text")
    assert code == 0 and "strategy=\"Direct\"" in out


def test_verify_bad_config(capsys):
    code, _, err = run(capsys, "verify", "--config", str(CONFIGS / "bad.toml"))
    assert code == 2 and "NotInCone" in err


def test_verify_automorphism_control(capsys):
    code, out, _ = run(capsys, "verify", "--config", str(CONFIGS / "automorphism.toml"))
    assert code == 0
    assert json.loads(out)["passed"]


def test_verify_failing_expectation(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text((CONFIGS / "automorphism.toml").read_text().replace("false", "true"))
    code, _, _ = run(capsys, "verify", "--config", str(cfg), "--budget", "500")
    assert code == 1


def test_verify_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code, _, _ = run(capsys, "verify", "--config", str(CONFIGS / "psd.toml"), "--csv", str(out))
    assert code == 0
    assert out.read_text().splitlines()[0] == "scenario,assertion,expected,measured,pass"


def test_properties(capsys):
    code, out, _ = run(capsys, "properties", "--cone", "orthant:3", "--format", "text")
    assert code == 0 and "checks passed" in out


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_flags_override_config(tmp_path, capsys):
    code, out, _ = run(capsys, "witness", "--config", str(CONFIGS / "lorentz.toml"), "--seed", "9")
    assert code == 0 and json.loads(out)["found"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--config", "/nonexistent.toml")
    assert code == 2 and "cannot read" in err


def test_config_errors_are_located():
    with pytest.raises(ConfigError) as exc:
        load_config('cone = "orthant:2"\nf = "covector:[1,1]"\nu = "unit"\ncolour = "red"\n')
    assert exc.value.line == 4
    with pytest.raises(ConfigError) as exc:
        load_config('cone = "orthant:2"\nf = "covector:[1,"\nu = "unit"\n')
    assert exc.value.line == 2 and exc.value.column is not None
    with pytest.raises(ConfigError) as exc:
        load_config('cone = "orthant:2"\nthis is not a pair\n')
    assert exc.value.line == 2
    with pytest.raises(ConfigError):
        load_config('cone = "orthant:2"\n')


def test_config_defaults():
    cfg = load_config('cone = "orthant:2"\nf = "covector:[1,1]"\nu = "unit"\n')
    assert (cfg.seed, cfg.budget, cfg.tol, cfg.format) == (0, 10_000, 1e-9, "json")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "coneperturb", "examples", "--name", "lp-truncation"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["passed"]
