"""Harness plumbing: config validation, CSV determinism, CLI behavior."""
import json
import math
import subprocess
import sys

import pytest

from convexholes.cli import main as cli_main
from convexholes.harness import ConfigError, ExperimentConfig, run_experiment


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "growth", "n_values": [16],
                                    "bogus_key": 1})


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "nope"})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "growth", "n_values": [64, 32]})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "growth", "n_values": [16],
                                    "trials": 0})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "lower_bound", "n_values": [100],
                                    "strip_t": 7})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "shape", "regions": ["square"],
                                    "n_values": [16]})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "census", "n_values": [31],
                                    "census_sizes": [3]})


def test_config_json_round_trip(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"experiment": "growth", "n_values": [16, 32],
                             "trials": 2, "master_seed": 7}))
    cfg = ExperimentConfig.from_json(p)
    assert cfg.n_values == [16, 32] and cfg.master_seed == 7
    p.write_text("not json")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(p)


def _run_and_write(tmp_path, name, **kw):
    cfg = ExperimentConfig(**kw)
    res = run_experiment(cfg)
    out = tmp_path / name
    res.write(out)
    return res, out.read_bytes()


def test_csv_byte_identical_across_worker_counts(tmp_path):
    base = dict(experiment="growth", regions=["square"], n_values=[32, 64],
                trials=8, master_seed=99)
    r1, b1 = _run_and_write(tmp_path, "a.csv", **base, worker_count=1)
    r2, b2 = _run_and_write(tmp_path, "b.csv", **base, worker_count=4)
    assert b1 == b2
    assert r1.ok and r2.ok


def test_normalized_ratio_recomputable():
    cfg = ExperimentConfig(experiment="growth", regions=["square"],
                           n_values=[32], trials=5, master_seed=1)
    res = run_experiment(cfg)
    for row in res.rows:
        expect = row["mch_size"] * math.log(math.log(row["n"])) / math.log(row["n"])
        assert abs(row["normalized_ratio"] - expect) <= 1e-12 * abs(expect)


def test_rows_totally_ordered():
    cfg = ExperimentConfig(experiment="shape", regions=["square", "triangle"],
                           n_values=[16, 32], trials=3, master_seed=2)
    res = run_experiment(cfg)
    keys = [(r["region"], r["n"], r["trial"]) for r in res.rows]
    assert keys == sorted(keys)


def test_growth_trivial_floor():
    cfg = ExperimentConfig(experiment="growth", regions=["square"],
                           n_values=[16], trials=20, master_seed=3)
    res = run_experiment(cfg)
    assert all(r["mch_size"] >= 3 for r in res.rows)


def test_shape_square_vs_square_ratio_one():
    # identical distributions on independent streams: ratio 1 within 2 sigma
    cfg = ExperimentConfig(experiment="shape", regions=["square", "square"],
                           n_values=[64], trials=60, master_seed=12)
    res = run_experiment(cfg)
    stats = {(s["region"], i): s for i, s in enumerate(res.summary["per_region"])}
    (ma, sa), (mb, sb) = [(s["mean_mch"], s["std_error"])
                          for s in res.summary["per_region"]]
    assert abs(ma - mb) <= 2.0 * math.sqrt(sa * sa + sb * sb)


def test_shape_mean_not_decreasing_under_doubling():
    # doubling n: each region's mean MCH non-decreasing within 2 sigma
    cfg = ExperimentConfig(experiment="shape", regions=["square", "triangle"],
                           n_values=[64, 128, 256], trials=40, master_seed=13)
    res = run_experiment(cfg)
    for region in ("square", "triangle"):
        seq = [(s["mean_mch"], s["std_error"]) for s in res.summary["per_region"]
               if s["region"] == region]
        for (m1, s1), (m2, s2) in zip(seq, seq[1:]):
            assert m2 >= m1 - 2.0 * math.sqrt(s1 * s1 + s2 * s2)


def test_sidecar_summary_written(tmp_path):
    cfg = ExperimentConfig(experiment="census", regions=["square"], n_values=[12],
                           census_sizes=[3], trials=2, master_seed=5)
    res = run_experiment(cfg)
    out = tmp_path / "census.csv"
    res.write(out)
    side = json.loads((tmp_path / "census.csv.summary.json").read_text())
    assert side["experiment"] == "census"
    assert side["ok"] is True
    assert "assertions" in side and "elapsed_s" in side


def test_cli_exit_codes(tmp_path):
    out = tmp_path / "c.csv"
    rc = cli_main(["census", "--trials", "2", "--n", "10", "--seed", "4",
                   "--out", str(out)])
    assert rc == 0
    assert out.exists()
    # config error: unknown key
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"experiment": "census", "wat": 1}))
    rc = cli_main(["census", "--config", str(bad)])
    assert rc == 2
    # config error: experiment mismatch
    mis = tmp_path / "mis.json"
    mis.write_text(json.dumps({"experiment": "growth", "n_values": [16]}))
    rc = cli_main(["census", "--config", str(mis)])
    assert rc == 2


def test_cli_entrypoint_subprocess(tmp_path):
    out = tmp_path / "sub.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "convexholes.cli", "census", "--trials", "1",
         "--n", "8", "--seed", "11", "--out", str(out)],
        capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    header = out.read_text().splitlines()[0]
    assert header.startswith("experiment,region,n,trial,seed")


def test_fuzz_experiment_small():
    cfg = ExperimentConfig(experiment="prop1_fuzz", regions=["square"],
                           n_values=[2000], fuzz_count=60, master_seed=6)
    res = run_experiment(cfg)
    assert res.ok
    assert res.summary["violations"] == 0
    kinds = set(res.summary["by_kind"])
    assert {"random_hull", "grid_sliver", "boundary_rect", "thin_triangle"} <= kinds
