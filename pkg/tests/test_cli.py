"""End-to-end tests of the command line."""

import json

import pytest

from main import main

RUN = """
[system]
delta_c = -1.0
g_am = 0.1
G_bm = 0.035
kappa_a = 0.1
kappa_m = 0.1
gamma_b = 0.01
nbar_b = 0.2

[sweep]
axis = "delta_m"
min = -1.5
max = -0.5
points = 11
outputs = ["E_ab", "T", "stability"]
"""

UNSTABLE = """
[system]
g_am = 0.0
G_bm = 0.5
kappa_a = 1e-3
kappa_m = 1e-3
gamma_b = 1e-3

[sweep]
axis = "G_bm"
min = 0.25
max = 0.5
points = 3
"""


@pytest.fixture
def app_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "application:\n  name: magnomech\n"
        f"logging:\n  level: INFO\n  directory: {tmp_path / 'logs'}\n"
        f"  config_file: {tmp_path / 'no-logging.yaml'}\n"
        f"sweep:\n  format: csv\n  output_dir: {tmp_path / 'results'}\n"
    )
    return path


def write_run(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_sweep_writes_csv(app_config, tmp_path):
    run = write_run(tmp_path, RUN)
    assert main(["--config", str(app_config), "sweep", str(run)]) == 0
    output = tmp_path / "results" / "run.csv"
    lines = output.read_text().splitlines()
    assert lines[0] == "delta_m,E_ab,T,stability"
    assert len(lines) == 12


def test_sweep_writes_json(app_config, tmp_path):
    run = write_run(tmp_path, RUN)
    out = tmp_path / "custom" / "points.json"
    assert main(["--config", str(app_config), "sweep", str(run), "--format", "json", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 11


def test_sweep_dumps_matrices(app_config, tmp_path):
    run = write_run(tmp_path, RUN)
    dump = tmp_path / "matrices"
    assert main(["--config", str(app_config), "sweep", str(run), "--dump-matrices", str(dump)]) == 0
    assert len(list(dump.glob("*_A.txt"))) == 11


def test_all_unstable_is_numerical_failure(app_config, tmp_path, capsys):
    run = write_run(tmp_path, UNSTABLE)
    assert main(["--config", str(app_config), "sweep", str(run)]) == 2
    assert "unstable" in capsys.readouterr().err


def test_missing_run_config(app_config, tmp_path):
    assert main(["--config", str(app_config), "sweep", str(tmp_path / "absent.toml")]) == 1


def test_invalid_parameters(app_config, tmp_path, capsys):
    run = write_run(tmp_path, RUN.replace("kappa_a = 0.1", "kappa_a = 0.0"))
    assert main(["--config", str(app_config), "sweep", str(run)]) == 1
    assert "kappa_a" in capsys.readouterr().err


def test_unknown_figure(app_config):
    assert main(["--config", str(app_config), "figure", "fig9"]) == 1


def test_missing_app_config(tmp_path):
    assert main(["--config", str(tmp_path / "absent.yaml"), "check"]) == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as excinfo:
        main(["sweep"])
    assert excinfo.value.code == 1


def test_unknown_format_rejected(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["sweep", str(tmp_path / "run.toml"), "--format", "xlsx"])
    assert excinfo.value.code == 1


@pytest.mark.slow
def test_check_command(app_config, capsys):
    assert main(["--config", str(app_config), "check"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "8 passed, 0 failed" in out


def test_parallel_input_error_exit_code(app_config, tmp_path, capsys):
    # Temperature axis without the photon and magnon frequencies
    run = write_run(tmp_path, RUN.replace('axis = "delta_m"\nmin = -1.5\nmax = -0.5', 'axis = "temperature_K"\nmin = 0.01\nmax = 0.1'))
    assert main(["--config", str(app_config), "sweep", str(run), "--jobs", "2"]) == 1
    assert "omega_c" in capsys.readouterr().err
