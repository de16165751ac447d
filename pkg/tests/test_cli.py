import json
import subprocess
import sys

import numpy as np
import pytest
import yaml
from numpy.testing import assert_allclose

from qautoenc import config, qlin
from qautoenc.cli import main, mean_trace_csv, restart_seeds
from qautoenc.photonic import GateName, gate_library

SMALL_TRAIN = {
    "kind": "train",
    "name": "small",
    "seed": 3,
    "restarts": 3,
    "ensemble": {
        "trash": "path",
        "states": [{"amplitudes": [1, 0, 0, 0, 0, 0, 0, 0]}, {"amplitudes": [0, 0, 0, 0, 0, 0, 1, 0]}],
    },
    "train": {"max_iters": 150, "warmup": 50, "shots": 500},
}


def write_cfg(tmp_path, cfg, name="cfg.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(cfg))
    return str(path)


def summary(out):
    return json.loads((out / "summary.json").read_text())


def test_presets_listed(capsys):
    assert main(["presets"]) == 0
    names = capsys.readouterr().out.split()
    for expected in ("fig4a", "fig4d", "figS1a", "fig5a", "fig3_cnot", "figS12b", "figS13b"):
        assert expected in names


@pytest.mark.parametrize("name", config.preset_names())
def test_every_preset_validates(name):
    config.load(name)


def test_encode_preset(tmp_path, capsys):
    assert main(["encode", "fig4a_encode"]) == 0
    assert "lossless=True" in capsys.readouterr().out
    assert main(["run", "fig4a_encode", "--out", str(tmp_path)]) == 0
    s = summary(tmp_path)
    assert s["cost"] <= 1e-9 and s["rank_R"] == 2
    u = qlin.load_matrix(tmp_path / "encoder.txt")
    assert qlin.is_unitary(u)


def test_fig4a_preset(tmp_path):
    assert main(["run", "fig4a", "--out", str(tmp_path)]) == 0
    s = summary(tmp_path)
    assert s["shots"] == "exact" and len(s["runs"]) == 20
    assert s["mean_final_cost"] <= 0.01
    assert sorted(p.name for p in tmp_path.glob("trace_r*.csv"))[-1] == "trace_r19.csv"
    head = (tmp_path / "trace_mean.csv").read_text().splitlines()[0]
    assert head == "iteration,mean_cost,std_cost"


def test_fig3_cnot_preset(tmp_path):
    assert main(["run", "fig3_cnot", "--out", str(tmp_path)]) == 0
    s = summary(tmp_path)
    assert s["converged"] and s["process_fidelity"] >= 0.999
    chi = qlin.load_matrix(tmp_path / "chi_ideal.txt")
    assert chi.shape == (16, 16)
    assert (tmp_path / "chi_solved_real.csv").read_text().startswith(",II,IX")


def test_bound_subcommand(capsys):
    assert main(["bound", "fig5a"]) == 0
    out = capsys.readouterr().out
    assert "bound=0.071201" in out
    assert "bound_interval_average=" in out


def test_empty_ensemble_rejected(tmp_path, capsys):
    cfg = dict(SMALL_TRAIN, ensemble={"states": []})
    assert main(["run", write_cfg(tmp_path, cfg)]) == 2
    assert "ensemble: empty" in capsys.readouterr().err


def test_unknown_key_named(tmp_path, capsys):
    cfg = dict(SMALL_TRAIN, train={"max_iters": 10, "learning_rate": 0.1})
    assert main(["run", write_cfg(tmp_path, cfg)]) == 2
    assert "learning_rate" in capsys.readouterr().err
    cfg = dict(SMALL_TRAIN, colour="red")
    assert main(["run", write_cfg(tmp_path, cfg)]) == 2
    assert "colour" in capsys.readouterr().err


def test_non_orthogonal_targets_domain_error(tmp_path, capsys):
    cfg = yaml.safe_load(config.resources.files("qautoenc.presets").joinpath("fig5a.yaml").read_text())
    cfg["problem"]["targets"] = {"a": [1, 0, 0, 0], "b": [1, 0, 1, 0]}
    assert main(["run", write_cfg(tmp_path, cfg)]) == 3
    assert "orthogonal" in capsys.readouterr().err


def test_missing_config(capsys):
    assert main(["run", "no_such_preset"]) == 2
    assert "no_such_preset" in capsys.readouterr().err


def test_unknown_gate(tmp_path, capsys):
    cfg = {"kind": "solve-gate", "gate": "Toffoli"}
    assert main(["run", write_cfg(tmp_path, cfg)]) == 2
    assert "Toffoli" in capsys.readouterr().err


def test_csv_bytes_deterministic(tmp_path):
    path = write_cfg(tmp_path, SMALL_TRAIN)
    for d in ("a", "b"):
        assert main(["run", path, "--out", str(tmp_path / d)]) == 0
    for name in ("trace_r00.csv", "trace_r02.csv", "trace_mean.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert main(["run", path, "--seed", "4", "--out", str(tmp_path / "c")]) == 0
    assert (tmp_path / "c" / "trace_r00.csv").read_bytes() != (tmp_path / "a" / "trace_r00.csv").read_bytes()


def test_jobs_do_not_change_results(tmp_path):
    path = write_cfg(tmp_path, SMALL_TRAIN)
    assert main(["run", path, "--out", str(tmp_path / "seq")]) == 0
    assert main(["run", path, "--jobs", "2", "--out", str(tmp_path / "par")]) == 0
    assert (tmp_path / "seq" / "trace_mean.csv").read_bytes() == (tmp_path / "par" / "trace_mean.csv").read_bytes()


def test_shot_mode_overrides(tmp_path):
    path = write_cfg(tmp_path, SMALL_TRAIN)
    assert main(["run", path, "--exact", "--out", str(tmp_path / "e")]) == 0
    assert summary(tmp_path / "e")["shots"] == "exact"
    assert main(["run", path, "--shots", "3000", "--out", str(tmp_path / "s")]) == 0
    assert summary(tmp_path / "s")["shots"] == 3000
    with pytest.raises(SystemExit):
        main(["run", path, "--exact", "--shots", "10"])


def test_gates_export_roundtrip(tmp_path):
    assert main(["gates", "--out", str(tmp_path)]) == 0
    for g in GateName:
        m = qlin.load_matrix(tmp_path / f"{g.value}.txt")
        assert_allclose(m, gate_library(g), rtol=0, atol=0)


def test_matrix_file_gate(tmp_path):
    qlin.save_matrix(tmp_path / "mine.txt", gate_library(GateName.CZ))
    cfg = {"kind": "solve-gate", "matrix_file": str(tmp_path / "mine.txt"), "solve": {"seeds": 4}}
    assert main(["run", write_cfg(tmp_path, cfg), "--out", str(tmp_path / "o")]) == 0
    assert summary(tmp_path / "o")["converged"]
    solved = qlin.load_matrix(tmp_path / "o" / "mine_solved.txt")
    assert qlin.is_unitary(solved, 1e-10)


def test_mean_trace_pads_short_runs():
    class T:
        def __init__(self, c):
            self.cost = np.array(c)

        def __len__(self):
            return len(self.cost)

    text = mean_trace_csv([T([1.0, 0.5]), T([1.0, 0.0, 0.0])])
    rows = [line.split(",") for line in text.strip().splitlines()[1:]]
    assert [float(r[1]) for r in rows] == [1.0, 0.25, 0.25]


def test_restart_seeds_independent_and_stable():
    assert restart_seeds(0, 3) == restart_seeds(0, 3)
    assert len(set(restart_seeds(0, 20))) == 20
    assert restart_seeds(0, 3) != restart_seeds(1, 3)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qautoenc", "presets"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fig4a" in proc.stdout
