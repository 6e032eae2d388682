import subprocess
import sys

import numpy as np
import pytest

from abcprc import io
from abcprc.cli import main
from abcprc.experiment import ExperimentConfig, run_experiment

FAST = ["--particles", "100", "--seeds", "1,2", "--schedule"]


@pytest.fixture
def short_schedule(tmp_path):
    p = tmp_path / "sched.txt"
    p.write_text("# quick\n5\n2\n1\n0.5\n")
    return str(p)


def test_prc_run_writes_files(tmp_path, short_schedule, capsys):
    out = tmp_path / "out"
    assert main(["--algorithm", "prc", "--kernel-var", "0.5", *FAST, short_schedule,
                 "--out-dir", str(out)]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("algorithm=prc kernel_var=0.5 median_final_variance=")
    assert line.endswith("oracle_variance=0.9 seeds=2")
    for seed in (1, 2):
        for kind in ("trace", "particles", "histogram"):
            assert (out / f"prc_seed{seed}_{kind}.csv").is_file()
    trace = io.read_trace_csv(out / "prc_seed1_trace.csv")
    assert [p.iteration for p in trace.points] == [1, 2, 3, 4]
    assert trace.final.epsilon == 0.5


def test_rejection_infinite_eps_within_bounds(tmp_path):
    assert main(["--algorithm", "rejection", "--eps", "inf", "--particles", "100",
                 "--seeds", "3", "--out-dir", str(tmp_path)]) == 0
    vals = io.read_particles_csv(tmp_path / "rejection_seed3_particles.csv")
    assert vals.size == 100
    assert np.all((vals > -15) & (vals < 15))


def test_mcmc_run(tmp_path):
    assert main(["--algorithm", "mcmc", "--eps", "0.5", "--kernel-var", "1", "--chain-len",
                 "5000", "--burn-in", "100", "--seeds", "1", "--out-dir", str(tmp_path)]) == 0
    trace = io.read_trace_csv(tmp_path / "mcmc_seed1_trace.csv")
    assert trace.final.iteration == 5000
    assert io.read_particles_csv(tmp_path / "mcmc_seed1_particles.csv").size == 5000


def test_budget_error_exit_status(tmp_path, short_schedule, capsys):
    code = main(["--algorithm", "prc", *FAST, short_schedule, "--max-sim-calls", "50",
                 "--out-dir", str(tmp_path)])
    assert code != 0
    assert "iteration 1" in capsys.readouterr().err


def test_bad_schedule_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("-1\n")
    assert main(["--schedule", str(bad), "--out-dir", str(tmp_path)]) != 0
    assert "line 1" in capsys.readouterr().err


def test_out_dir_from_environment(tmp_path, monkeypatch, short_schedule):
    monkeypatch.setenv("ABCPRC_OUT_DIR", str(tmp_path / "env-out"))
    cfg = ExperimentConfig(algorithm="prc", particles=50, seeds=(1,), schedule=short_schedule)
    run_experiment(cfg, emit=None)
    assert (tmp_path / "env-out" / "prc_seed1_trace.csv").is_file()


def test_plot_output_is_stable(tmp_path, short_schedule):
    pytest.importorskip("matplotlib")
    files = []
    for k in range(2):
        out = tmp_path / f"o{k}"
        main(["--algorithm", "prc-corrected", *FAST, short_schedule, "--plot", "--out-dir", str(out)])
        files.append((out / "prc-corrected_seed1_histogram.svg").read_bytes())
    assert files[0] == files[1]
    assert files[0].lstrip().startswith(b"<?xml")


def test_module_entry_point(tmp_path, short_schedule):
    res = subprocess.run([sys.executable, "-m", "abcprc", "--particles", "50", "--seeds", "1",
                          "--schedule", short_schedule, "--out-dir", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert "median_final_variance" in res.stdout


def test_empty_seed_list_rejected():
    with pytest.raises(SystemExit):
        main(["--seeds", ","])
