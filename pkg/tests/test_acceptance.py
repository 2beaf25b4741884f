"""Acceptance gate: every criterion at its stated tolerance and budget.

Each test prints one PASS line (visible with `pytest -s` or in failure
output).  Tolerances and scales are pinned here, not configurable.
"""
import time
from fractions import Fraction

from convexholes import (
    Containment,
    contains_point,
    convex_hull,
    check_square_lower_bound,
    check_triangle_upper_bound,
    empirical_p_convex,
    is_convex_position,
    largest_hole_bruteforce,
    largest_hole_dp,
    p_convex_parallelogram,
    p_convex_triangle,
    RegionSpec,
    sample_uniform,
    triangle_bound_threshold,
)
from convexholes.harness import ExperimentConfig, run_experiment

MASTER = 20260801


def _report(idx, label, t0, budget_s):
    dt = time.time() - t0
    assert dt < budget_s, f"criterion {idx} exceeded its {budget_s}s budget: {dt:.1f}s"
    print(f"ACCEPTANCE {idx:2d} PASS {label} ({dt:.1f}s / {budget_s}s)")


def test_criterion_01_exact_valtr_values():
    t0 = time.time()
    assert p_convex_parallelogram(4).value == Fraction(25, 36)
    assert p_convex_triangle(4).value == Fraction(2, 3)
    # independent factorial-product evaluation
    from math import comb, factorial
    assert p_convex_parallelogram(4).value == Fraction(comb(6, 3), factorial(4)) ** 2
    assert p_convex_triangle(4).value == Fraction(
        2 ** 4 * factorial(9), factorial(3) ** 3 * factorial(8))
    _report(1, "exact convex-position values (25/36, 2/3)", t0, 1.0)


def test_criterion_02_bound_sweeps():
    t0 = time.time()
    assert all(check_square_lower_bound(r) for r in range(3, 101))
    th = triangle_bound_threshold(200)
    assert all(check_triangle_upper_bound(r) for r in range(th, 201))
    assert not check_triangle_upper_bound(th - 1)
    _report(2, f"exact bound sweeps (triangle threshold r={th})", t0, 10.0)


def test_criterion_03_monte_carlo_agreement():
    t0 = time.time()
    trials = 100000
    est, se = empirical_p_convex(RegionSpec.unit_square(), 4, trials, MASTER)
    assert abs(est - 25 / 36) <= 3 * se, (est, se)
    est, se = empirical_p_convex(RegionSpec.triangle(), 4, trials, MASTER, substream=1)
    assert abs(est - 2 / 3) <= 3 * se, (est, se)
    _report(3, "Monte Carlo within 3 sigma at 1e5 trials", t0, 30.0)


def test_criterion_04_oracle_equivalence():
    t0 = time.time()
    reg = RegionSpec.unit_square()
    for trial in range(500):
        n = 4 + trial % 11
        ps = sample_uniform(reg, n, MASTER + 4, trial=trial)
        d = largest_hole_dp(ps)
        b = largest_hole_bruteforce(ps)
        assert d.size == b.size, (trial, n)
        assert is_convex_position(list(d.vertices))
        hull = convex_hull(list(d.vertices), scale=1)
        assert not any(
            contains_point(hull, p, Containment.STRICT_INTERIOR)
            for p in ps.points)
    _report(4, "DP equals exhaustive oracle on 500 instances", t0, 60.0)


def test_criterion_05_sandwich_fuzz():
    t0 = time.time()
    cfg = ExperimentConfig(experiment="prop1_fuzz", regions=["square"],
                           n_values=[2000], fuzz_count=1000, master_seed=MASTER + 5)
    res = run_experiment(cfg)
    assert res.summary["violations"] == 0
    assert res.summary["instances"] == 1000
    kinds = res.summary["by_kind"]
    assert kinds["boundary_rect"]["inscribe_applicable"] == kinds["boundary_rect"]["count"]
    assert res.ok
    _report(5, "1000-instance approximation fuzz, zero violations", t0, 120.0)


def test_criterion_06_growth_window():
    t0 = time.time()
    cfg_a = ExperimentConfig(experiment="growth", regions=["square"],
                             n_values=[128, 256, 512, 1024], trials=50,
                             master_seed=MASTER + 6)
    res_a = run_experiment(cfg_a)
    cfg_b = ExperimentConfig(experiment="growth", regions=["square"],
                             n_values=[2048], trials=10, master_seed=MASTER + 6)
    res_b = run_experiment(cfg_b)
    rows = res_a.rows + res_b.rows
    for row in rows:
        assert 0.5 <= row["normalized_ratio"] <= 160.0, row
    means = ([s["mean_normalized_ratio"] for s in res_a.summary["per_n"]]
             + [s["mean_normalized_ratio"] for s in res_b.summary["per_n"]])
    assert max(means) / min(means) < 2.0, means
    assert res_a.ok and res_b.ok
    _report(6, f"growth window, mean ratios {min(means):.2f}..{max(means):.2f}",
            t0, 1800.0)


def test_criterion_07_shape_invariance():
    t0 = time.time()
    cfg = ExperimentConfig(experiment="shape",
                           regions=["square", "disk", "triangle"],
                           n_values=[512], trials=200, master_seed=MASTER + 7)
    res = run_experiment(cfg)
    for pair in res.summary["pairwise"]:
        assert 1 / 3 <= pair["ratio"] <= 3.0, pair
        assert pair["diff_in_sigma"] <= 4.0, pair
    assert res.ok
    _report(7, "shape invariance at n=512 (ratios within [1/3,3], 4 sigma)",
            t0, 1200.0)


def test_criterion_08_lower_bound_construction():
    t0 = time.time()
    cfg = ExperimentConfig(experiment="lower_bound", regions=["square"],
                           n_values=[2000], strip_t=5, trials=500,
                           master_seed=MASTER + 8)
    res = run_experiment(cfg)
    per_n = res.summary["per_n"][0]
    assert abs(per_n["z_score"]) <= 3.0, per_n
    assert res.assertions["every_convex_group_certifies_hole"]
    assert res.ok
    _report(8, f"strip construction (z={per_n['z_score']:.2f}, "
               f"freq={per_n['per_strip_freq']:.4f} vs {per_n['p_exact']:.4f})",
            t0, 600.0)


def test_criterion_09_upper_trace():
    t0 = time.time()
    cfg = ExperimentConfig(experiment="upper_trace", regions=["square"],
                           n_values=[2048], trials=200, master_seed=MASTER + 9)
    res = run_experiment(cfg)
    per_n = res.summary["per_n"][0]
    assert per_n["event_b_rate"] >= 0.99, per_n
    assert per_n["event_d_rate"] >= 0.99, per_n
    assert per_n["chain_holds_all"], per_n
    assert res.assertions["sandwich_verified_all_trials"]
    assert res.ok
    _report(9, f"upper-bound trace at n=2048 "
               f"(eventB {per_n['event_b_rate']:.3f}, eventD {per_n['event_d_rate']:.3f}, "
               f"inscribe applicable {per_n['inscribe_applicable']}/200)",
            t0, 1800.0)


def test_criterion_10_determinism(tmp_path):
    t0 = time.time()
    for experiment, extra in (
            ("growth", dict(n_values=[64], trials=20)),
            ("census", dict(n_values=[16], census_sizes=[3, 4], trials=10))):
        blobs = []
        for workers in (1, 4):
            cfg = ExperimentConfig(experiment=experiment, regions=["square"],
                                   master_seed=MASTER + 10, worker_count=workers,
                                   **extra)
            res = run_experiment(cfg)
            out = tmp_path / f"{experiment}_{workers}.csv"
            res.write(out)
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1], experiment
    _report(10, "byte-identical CSV across worker counts (two experiments)",
            t0, 300.0)
