"""Reproducible Monte Carlo experiments over the library.

Each experiment consumes an ExperimentConfig and produces TrialRecord rows
plus a JSON summary.  Trials are the unit of parallelism: every trial derives
its random stream purely from (master_seed, substream, trial index), workers
never share state, and rows are emitted in (experiment, region, n, trial)
order after all workers finish -- so the CSV is byte-identical for a given
(config, master_seed) no matter the worker count.  Wall-clock timings are
deliberately kept out of the CSV (they would break that identity) and live
in the JSON sidecar instead.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .convpos import (
    LowerBoundPlan,
    empirical_p_convex,
    lower_bound_failure_prob,
    p_convex_parallelogram,
    p_convex_triangle,
    check_square_lower_bound,
    check_triangle_upper_bound,
    triangle_bound_threshold,
)
from .geometry import (
    ConvexPolygon,
    Point,
    RationalPoint,
    clip_to_region,
    convex_hull,
    fan_triangulate,
    is_convex_position,
    orient,
)
from .holes import count_holes_of_size, largest_hole_dp
from .lattice import MIN_AREA_NUMERATOR, verify_sandwich
from .sampler import PointSet, RegionSpec, sample_uniform, strip_partition

_WEYL = 0x9E3779B97F4A7C15
EXPERIMENTS = ("growth", "shape", "valtr", "lower_bound", "upper_trace",
               "prop1_fuzz", "census")

GROWTH_RATIO_LO = 0.5      # proven w.h.p. window for MCH * loglog n / log n
GROWTH_RATIO_HI = 160.0
SHAPE_RATIO_LO = 1.0 / 3.0
SHAPE_RATIO_HI = 3.0


class ConfigError(ValueError):
    pass


_KNOWN_KEYS = {
    "experiment", "regions", "n_values", "trials", "r_values", "master_seed",
    "output_path", "worker_count", "strip_t", "census_sizes", "fuzz_count",
    "mc_trials",
}


@dataclass
class ExperimentConfig:
    experiment: str
    regions: list = field(default_factory=lambda: ["square"])
    n_values: list = field(default_factory=list)
    trials: int = 1
    r_values: list = field(default_factory=list)
    master_seed: int = 20240801
    output_path: Optional[str] = None
    worker_count: int = 1
    strip_t: Optional[int] = None
    census_sizes: list = field(default_factory=list)
    fuzz_count: int = 1000
    mc_trials: int = 100000

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if any(n <= 0 for n in self.n_values):
            raise ConfigError("n_values must be positive")
        if list(self.n_values) != sorted(self.n_values):
            raise ConfigError("n_values must be sorted ascending")
        if not (0 <= self.master_seed < 2 ** 64):
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        if self.worker_count < 1:
            raise ConfigError("worker_count must be positive")
        if self.experiment in ("growth", "shape", "upper_trace") and not self.n_values:
            raise ConfigError(f"{self.experiment} needs n_values")
        if self.experiment == "growth" and max(self.n_values) > 4096:
            raise ConfigError("growth experiment capped at n <= 4096")
        if self.experiment == "upper_trace" and max(self.n_values) > 2048:
            raise ConfigError("upper_trace experiment capped at n <= 2048")
        if self.experiment == "shape" and len(self.regions) < 2:
            raise ConfigError("shape experiment needs at least 2 regions")
        if self.experiment == "valtr":
            if not self.r_values:
                raise ConfigError("valtr needs r_values")
            if any(not (3 <= r <= 12) for r in self.r_values):
                raise ConfigError("valtr Monte Carlo r_values must lie in [3, 12]")
        if self.experiment == "lower_bound":
            if not self.n_values:
                raise ConfigError("lower_bound needs n_values")
            t = self.strip_t
            if t is not None:
                if t < 3:
                    raise ConfigError("strip_t must be at least 3")
                for n in self.n_values:
                    if n % t != 0:
                        raise ConfigError(f"strip_t={t} must divide every n")
        if self.experiment == "census":
            if not self.n_values or not self.census_sizes:
                raise ConfigError("census needs n_values and census_sizes")
            if max(self.n_values) > 30 or max(self.census_sizes) > 6:
                raise ConfigError("census capped at n <= 30, s <= 6")

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        unknown = set(d) - _KNOWN_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "experiment" not in d:
            raise ConfigError("config needs an 'experiment' key")
        return ExperimentConfig(**d)

    @staticmethod
    def from_json(path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as f:
            try:
                d = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"config is not valid JSON: {e}") from e
        if not isinstance(d, dict):
            raise ConfigError("config JSON must be an object")
        return ExperimentConfig.from_dict(d)

    def region_specs(self) -> list[RegionSpec]:
        out = []
        for r in self.regions:
            if isinstance(r, str):
                out.append(RegionSpec.by_name(r))
            elif isinstance(r, dict):
                out.append(RegionSpec.from_json(r))
            else:
                raise ConfigError(f"bad region entry {r!r}")
        return out

    def to_echo(self) -> dict:
        return {
            "experiment": self.experiment,
            "regions": [r if isinstance(r, str) else dict(r) for r in self.regions],
            "n_values": list(self.n_values),
            "trials": self.trials,
            "r_values": list(self.r_values),
            "master_seed": self.master_seed,
            "worker_count": self.worker_count,
            "strip_t": self.strip_t,
            "census_sizes": list(self.census_sizes),
            "fuzz_count": self.fuzz_count,
            "mc_trials": self.mc_trials,
        }


@dataclass
class ExperimentResult:
    experiment: str
    fieldnames: list[str]
    rows: list[dict]
    summary: dict
    assertions: dict
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in self.assertions.values())

    def write(self, out_path) -> None:
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        lines = [",".join(self.fieldnames)]
        for row in self.rows:
            lines.append(",".join(_csv_cell(row.get(k)) for k in self.fieldnames))
        out_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        sidecar = {
            "experiment": self.experiment,
            "summary": self.summary,
            "assertions": {k: bool(v) for k, v in self.assertions.items()},
            "ok": self.ok,
            "elapsed_s": self.elapsed_s,
        }
        side_path = out_path.with_suffix(out_path.suffix + ".summary.json")
        side_path.write_text(json.dumps(sidecar, indent=2, default=_json_default) + "\n",
                             encoding="utf-8")


def _json_default(o):
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    raise TypeError(f"not JSON serializable: {type(o)}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def _substream(master: int, idx: int) -> int:
    return (master + _WEYL * idx) % (2 ** 64)


def _parallel(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _mean_se(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    if len(arr) > 1:
        se = float(arr.std(ddof=1) / math.sqrt(len(arr)))
    else:
        se = 0.0
    return mean, se


def _normalized_ratio(mch: int, n: int) -> float:
    return mch * math.log(math.log(n)) / math.log(n)


# ---------------------------------------------------------------- growth

def run_growth(cfg: ExperimentConfig) -> ExperimentResult:
    """MCH growth over n on the unit square; per-trial normalized ratios."""
    t0 = time.time()
    regions = cfg.region_specs()
    if len(regions) != 1 or regions[0].kind != "unit_square_centered":
        raise ConfigError("growth experiment runs on the unit square")
    region = regions[0]

    tasks = [(ni, n, trial) for ni, n in enumerate(cfg.n_values)
             for trial in range(cfg.trials)]

    def work(task):
        ni, n, trial = task
        seed = _substream(cfg.master_seed, ni)
        ps = sample_uniform(region, n, seed, trial=trial)
        res = largest_hole_dp(ps)
        return {
            "experiment": "growth", "region": region.name, "n": n,
            "trial": trial, "seed": cfg.master_seed, "mch_size": res.size,
            "normalized_ratio": _normalized_ratio(res.size, n),
            "flags": ";".join(res.flags),
        }

    rows = _parallel(work, tasks, cfg.worker_count)
    rows.sort(key=lambda r: (r["region"], r["n"], r["trial"]))

    summary = {"per_n": []}
    in_window = True
    means = []
    for n in cfg.n_values:
        sizes = [r["mch_size"] for r in rows if r["n"] == n]
        ratios = [r["normalized_ratio"] for r in rows if r["n"] == n]
        mean, se = _mean_se(sizes)
        mean_ratio = float(np.mean(ratios))
        means.append(mean_ratio)
        in_window &= all(GROWTH_RATIO_LO <= x <= GROWTH_RATIO_HI for x in ratios)
        summary["per_n"].append({
            "n": n, "trials": len(sizes), "mean_mch": mean, "std_error": se,
            "mean_normalized_ratio": mean_ratio,
            "min_ratio": min(ratios), "max_ratio": max(ratios),
        })
    spread_ok = (max(means) / min(means) < 2.0) if means else True
    assertions = {
        "ratios_within_proven_window": in_window,
        "mean_ratio_spread_below_2x": spread_ok,
    }
    fields = ["experiment", "region", "n", "trial", "seed", "mch_size",
              "normalized_ratio", "flags"]
    return ExperimentResult("growth", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- shape

def run_shape(cfg: ExperimentConfig) -> ExperimentResult:
    """Mean MCH per region and pairwise ratios (shape-invariance check)."""
    t0 = time.time()
    regions = cfg.region_specs()
    tasks = [(ri, region, ni, n, trial)
             for ri, region in enumerate(regions)
             for ni, n in enumerate(cfg.n_values)
             for trial in range(cfg.trials)]

    def work(task):
        ri, region, ni, n, trial = task
        seed = _substream(cfg.master_seed, ri * 1024 + ni)
        ps = sample_uniform(region, n, seed, trial=trial)
        res = largest_hole_dp(ps)
        return {
            "experiment": "shape", "region": region.name, "n": n,
            "trial": trial, "seed": cfg.master_seed, "mch_size": res.size,
            "normalized_ratio": _normalized_ratio(res.size, n),
        }

    rows = _parallel(work, tasks, cfg.worker_count)
    rows.sort(key=lambda r: (r["region"], r["n"], r["trial"]))

    summary = {"per_region": [], "pairwise": []}
    ratios_ok = True
    sigma4_ok = True
    for n in cfg.n_values:
        stats = {}
        for region in regions:
            sizes = [r["mch_size"] for r in rows
                     if r["region"] == region.name and r["n"] == n]
            mean, se = _mean_se(sizes)
            stats[region.name] = (mean, se)
            summary["per_region"].append(
                {"region": region.name, "n": n, "mean_mch": mean, "std_error": se})
        names = [r.name for r in regions]
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                (ma, sa), (mb, sb) = stats[names[i]], stats[names[j]]
                ratio = ma / mb
                diff_sigma = abs(ma - mb) / math.sqrt(sa * sa + sb * sb) if sa + sb > 0 else 0.0
                ratios_ok &= SHAPE_RATIO_LO <= ratio <= SHAPE_RATIO_HI
                sigma4_ok &= diff_sigma <= 4.0
                summary["pairwise"].append({
                    "n": n, "region_a": names[i], "region_b": names[j],
                    "ratio": ratio, "diff_in_sigma": diff_sigma,
                })
    assertions = {
        "pairwise_ratios_within_3x": ratios_ok,
        "means_within_4_sigma": sigma4_ok,
    }
    fields = ["experiment", "region", "n", "trial", "seed", "mch_size",
              "normalized_ratio"]
    return ExperimentResult("shape", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- valtr

def run_valtr(cfg: ExperimentConfig) -> ExperimentResult:
    """Exact vs empirical convex-position probabilities, plus bound sweeps."""
    t0 = time.time()
    regions = cfg.region_specs()
    rows = []
    z_ok = True
    for ri, region in enumerate(regions):
        if region.kind == "unit_square_centered":
            exact_fn, bound_label = p_convex_parallelogram, "r^-2r<=p"
        elif region.kind == "triangle":
            exact_fn, bound_label = p_convex_triangle, "p<=r^-r"
        else:
            raise ConfigError("valtr experiment runs on square and triangle regions")
        for rj, r in enumerate(cfg.r_values):
            exact = exact_fn(r)
            est, se = empirical_p_convex(region, r, cfg.mc_trials,
                                         cfg.master_seed,
                                         substream=ri * 64 + rj)
            ex_f = float(exact.value)
            z = 0.0 if se == 0 else (est - ex_f) / se
            if region.kind == "unit_square_centered":
                bound_ok = check_square_lower_bound(r)
            else:
                bound_ok = check_triangle_upper_bound(r)
            if r >= 4:
                z_ok &= abs(z) <= 3.0
            rows.append({
                "experiment": "valtr", "region": region.name, "r": r,
                "seed": cfg.master_seed, "trials": cfg.mc_trials,
                "exact_value": exact.value, "exact_decimal": ex_f,
                "empirical": est, "std_error": se, "z_score": z,
                "bound": bound_label, "bound_holds": bound_ok,
            })
    rows.sort(key=lambda row: (row["region"], row["r"]))

    square_sweep = all(check_square_lower_bound(r) for r in range(3, 101))
    tri_threshold = triangle_bound_threshold(200)
    tri_sweep = all(check_triangle_upper_bound(r) for r in range(tri_threshold, 201))
    summary = {
        "square_bound_sweep_3_100": square_sweep,
        "triangle_bound_threshold": tri_threshold,
        "triangle_bound_sweep_to_200": tri_sweep,
    }
    assertions = {
        "z_scores_within_3_sigma": z_ok,
        "square_bound_sweep": square_sweep,
        "triangle_bound_from_threshold": tri_sweep,
    }
    fields = ["experiment", "region", "r", "seed", "trials", "exact_value",
              "exact_decimal", "empirical", "std_error", "z_score", "bound",
              "bound_holds"]
    return ExperimentResult("valtr", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- lower bound

def _group_is_hole(ps: PointSet, members: list[Point]) -> bool:
    """Exact certificate: group in convex position and its hull empty."""
    if not is_convex_position(members):
        return False
    k = len(members)
    hull = convex_hull(members, scale=1)   # grid-coordinate cycle
    cyc = [(int(v.x), int(v.y)) for v in hull.vertices]
    xs = np.asarray(ps.xs)
    ys = np.asarray(ps.ys)
    inside = np.ones(len(xs), bool)
    for i in range(len(cyc)):
        ax, ay = cyc[i]
        bx, by = cyc[(i + 1) % len(cyc)]
        inside &= ((bx - ax) * (ys - ay) - (by - ay) * (xs - ax)) > 0
    return not inside.any()


def run_lower_bound(cfg: ExperimentConfig) -> ExperimentResult:
    """Strip-partition construction: per-strip convex-position frequency and
    hole certificates."""
    t0 = time.time()
    regions = cfg.region_specs()
    if len(regions) != 1 or regions[0].kind != "unit_square_centered":
        raise ConfigError("lower_bound experiment runs on the unit square")
    region = regions[0]

    rows = []
    skipped = []
    plan_by_n = {}
    for n in cfg.n_values:
        if cfg.strip_t is not None:
            plan_by_n[n] = LowerBoundPlan.with_t(n, cfg.strip_t)
        else:
            plan = LowerBoundPlan.from_n(n)
            if plan.t < 3:
                skipped.append({"n": n, "reason": f"formula t={plan.t} < 3"})
                plan_by_n[n] = None
            else:
                plan_by_n[n] = plan

    tasks = [(ni, n, trial) for ni, n in enumerate(cfg.n_values)
             if plan_by_n[n] is not None for trial in range(cfg.trials)]

    def work(task):
        ni, n, trial = task
        plan = plan_by_n[n]
        seed = _substream(cfg.master_seed, ni)
        ps = sample_uniform(region, n, seed, trial=trial)
        parts = strip_partition(ps, plan.t)
        convex_flags = []
        certified = 0
        for members, _strip in parts:
            good = is_convex_position(members)
            convex_flags.append(good)
            if good and _group_is_hole(ps, members):
                certified += 1
        nconv = sum(convex_flags)
        return {
            "experiment": "lower_bound", "region": region.name, "n": n,
            "trial": trial, "seed": cfg.master_seed, "t": plan.t, "k": plan.k,
            "strips_convex": nconv,
            "strip_success_freq": nconv / plan.k,
            "any_success": nconv > 0,
            "certified_holes": certified,
            "mch_at_least_t": certified > 0,
        }

    rows = _parallel(work, tasks, cfg.worker_count)
    rows.sort(key=lambda r: (r["region"], r["n"], r["trial"]))

    summary = {"per_n": [], "skipped": skipped}
    affine_ok = True
    cert_ok = True
    onesided_ok = True
    for n in cfg.n_values:
        plan = plan_by_n[n]
        if plan is None:
            continue
        sub = [r for r in rows if r["n"] == n]
        total_strips = plan.k * len(sub)
        total_conv = sum(r["strips_convex"] for r in sub)
        freq = total_conv / total_strips
        p_exact = float(p_convex_parallelogram(plan.t).value)
        se = math.sqrt(p_exact * (1 - p_exact) / total_strips)
        z = (freq - p_exact) / se
        any_freq = sum(1 for r in sub if r["any_success"]) / len(sub)
        exact_form, e_bound = lower_bound_failure_prob(plan)
        se_any = math.sqrt(max(any_freq * (1 - any_freq), 1e-12) / len(sub))
        onesided = any_freq >= (1.0 - e_bound) - 3.0 * se_any
        affine_ok &= abs(z) <= 3.0
        cert_ok &= all(r["certified_holes"] == r["strips_convex"] for r in sub)
        onesided_ok &= onesided
        summary["per_n"].append({
            "n": n, "t": plan.t, "k": plan.k,
            "per_strip_freq": freq, "p_exact": p_exact, "z_score": z,
            "any_success_freq": any_freq,
            "failure_prob_exact_form": exact_form,
            "failure_prob_e_bound": e_bound,
            "one_sided_check": onesided,
        })
    assertions = {
        "per_strip_freq_within_3_sigma": affine_ok,
        "every_convex_group_certifies_hole": cert_ok,
        "one_sided_success_bound": onesided_ok,
    }
    fields = ["experiment", "region", "n", "trial", "seed", "t", "k",
              "strips_convex", "strip_success_freq", "any_success",
              "certified_holes", "mch_at_least_t"]
    return ExperimentResult("lower_bound", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- upper trace

def _count_in_cycle(ps: PointSet, cycle) -> int:
    """|points closed-inside a CCW vertex cycle|, float filter + exact fallback.

    Coordinates are O(1) in unit lengths, so a float cross below 1e-9 in
    magnitude is the only case that needs the exact rational test."""
    k = len(cycle)
    if k < 3:
        return 0
    fx = np.asarray(ps.xs, dtype=float) / ps.scale
    fy = np.asarray(ps.ys, dtype=float) / ps.scale
    min_cross = np.full(len(fx), np.inf)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        ax, ay, bx, by = float(a.x), float(a.y), float(b.x), float(b.y)
        cr = (bx - ax) * (fy - ay) - (by - ay) * (fx - ax)
        np.minimum(min_cross, cr, out=min_cross)
    eps = 1e-9
    count = int((min_cross > eps).sum())
    for idx in np.nonzero(np.abs(min_cross) <= eps)[0]:
        p = RationalPoint(Fraction(int(ps.xs[idx]), ps.scale),
                          Fraction(int(ps.ys[idx]), ps.scale))
        if all(orient(cycle[i], cycle[(i + 1) % k], p) >= 0 for i in range(k)):
            count += 1
    return count


def _count_in_hull(ps: PointSet, hull: ConvexPolygon) -> int:
    return _count_in_cycle(ps, hull.vertices)


def run_upper_trace(cfg: ExperimentConfig) -> ExperimentResult:
    """Per-trial audit of the circumscribe/inscribe chain on the largest hole."""
    t0 = time.time()
    regions = cfg.region_specs()
    if len(regions) != 1 or regions[0].kind != "unit_square_centered":
        raise ConfigError("upper_trace experiment runs on the unit square")
    region = regions[0]

    tasks = [(ni, n, trial) for ni, n in enumerate(cfg.n_values)
             for trial in range(cfg.trials)]

    def work(task):
        ni, n, trial = task
        seed = _substream(cfg.master_seed, ni)
        ps = sample_uniform(region, n, seed, trial=trial)
        res = largest_hole_dp(ps)
        H = convex_hull(res.vertices, scale=ps.scale)
        report = verify_sandwich(H, n)
        log_n = math.log(n)
        q1_hull = report.q1.hull()
        n_in_q1 = _count_in_hull(ps, q1_hull)
        clipped = clip_to_region(q1_hull, region)
        tris = fan_triangulate(clipped)
        tri_counts = [_count_in_cycle(ps, t) for t in tris]
        event_b = (report.area_q0 is not None
                   and float(report.area_q0) < 20.0 * log_n / n)
        event_d = (float(report.area_q1) < 2000.0 * log_n / n
                   and n_in_q1 <= 3000.0 * log_n)
        hole_cap = 160.0 * log_n / math.log(log_n)
        row = {
            "experiment": "upper_trace", "region": region.name, "n": n,
            "trial": trial, "seed": cfg.master_seed, "mch_size": res.size,
            "area_h": report.area_h, "area_h_dec": float(report.area_h),
            "area_q1": report.area_q1, "area_q1_dec": float(report.area_q1),
            "area_q0": report.area_q0,
            "area_q0_dec": float(report.area_q0) if report.area_q0 is not None else None,
            "inscribe_applicable": report.inscribe_applicable,
            "chain_ok": report.chain_ok if report.inscribe_applicable else None,
            "event_b": event_b if report.inscribe_applicable else None,
            "event_d": event_d,
            "points_in_q1": n_in_q1,
            "clip_triangles": len(tris),
            "triangle_point_counts": ";".join(str(c) for c in tri_counts),
            "hole_below_160_log_ratio": res.size < hole_cap,
            "sandwich_ok": report.ok,
        }
        return row

    rows = _parallel(work, tasks, cfg.worker_count)
    rows.sort(key=lambda r: (r["region"], r["n"], r["trial"]))

    summary = {"per_n": []}
    chain_all = True
    sandwich_all = True
    b_ok = True
    d_ok = True
    tri_ok = True
    cap_ok = True
    for n in cfg.n_values:
        sub = [r for r in rows if r["n"] == n]
        applicable = [r for r in sub if r["inscribe_applicable"]]
        b_hits = sum(1 for r in applicable if r["event_b"])
        d_hits = sum(1 for r in sub if r["event_d"])
        chain_hits = sum(1 for r in applicable if r["chain_ok"])
        b_rate = b_hits / len(applicable) if applicable else 1.0
        d_rate = d_hits / len(sub)
        chain_all &= chain_hits == len(applicable)
        sandwich_all &= all(r["sandwich_ok"] for r in sub)
        b_ok &= b_rate >= 0.99
        d_ok &= d_rate >= 0.99
        tri_ok &= all(r["clip_triangles"] <= 8 for r in sub)
        cap_ok &= all(r["hole_below_160_log_ratio"] for r in sub)
        summary["per_n"].append({
            "n": n, "trials": len(sub),
            "inscribe_applicable": len(applicable),
            "event_b_rate": b_rate, "event_b_violations": len(applicable) - b_hits,
            "event_d_rate": d_rate, "event_d_violations": len(sub) - d_hits,
            "chain_holds_all": chain_hits == len(applicable),
            "max_clip_triangles": max(r["clip_triangles"] for r in sub),
            "mean_mch": float(np.mean([r["mch_size"] for r in sub])),
        })
    assertions = {
        "sandwich_verified_all_trials": sandwich_all,
        "chain_96x_all_applicable": chain_all,
        "event_b_at_least_99pct": b_ok,
        "event_d_at_least_99pct": d_ok,
        "clip_at_most_8_triangles": tri_ok,
        "hole_below_160_log_ratio": cap_ok,
    }
    fields = ["experiment", "region", "n", "trial", "seed", "mch_size",
              "area_h", "area_h_dec", "area_q1", "area_q1_dec", "area_q0",
              "area_q0_dec", "inscribe_applicable", "chain_ok", "event_b",
              "event_d", "points_in_q1", "clip_triangles",
              "triangle_point_counts", "hole_below_160_log_ratio",
              "sandwich_ok"]
    return ExperimentResult("upper_trace", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- fuzz

def _fuzz_polygons(n: int, count: int, master_seed: int):
    """Deterministic mixed population of convex polygons inside R.

    Yields (kind, ConvexPolygon): random hulls of 5..50 sampled points,
    grid-sliver near-collinear hulls, exact boundary-area rectangles at
    64/n, 2*64/n and 100/n, thin triangles, segments and single points.
    """
    region = RegionSpec.unit_square()
    half = Fraction(1, 2)
    out = []
    thresh = Fraction(MIN_AREA_NUMERATOR, n)

    n_hull = count - count // 5
    for trial in range(n_hull):
        k = 5 + (trial * 7) % 46
        ps = sample_uniform(region, k, _substream(master_seed, 1), trial=trial)
        out.append(("random_hull", convex_hull(ps.points)))

    rest = count - n_hull
    for i in range(rest):
        kind = i % 5
        seed_ps = sample_uniform(region, 4, _substream(master_seed, 2), trial=i)
        px = [int(v) for v in seed_ps.xs]
        py = [int(v) for v in seed_ps.ys]
        if kind == 0:
            # near-collinear grid sliver: tiny area, huge aspect ratio
            a = Point(px[0], py[0])
            b = Point(px[1], py[1])
            step = (1 + i % 3) * (-1 if py[1] > 0 else 1)  # stay inside R
            c = Point(px[1], py[1] + step)
            poly = convex_hull([a, b, c])
            if poly.degenerate:
                poly = ConvexPolygon((a.to_rational(), b.to_rational()))
            out.append(("grid_sliver", poly))
        elif kind == 1:
            # rectangle of area exactly 64/n (inscribe threshold)
            hgt = Fraction(1, 2)
            wid = thresh / hgt
            x0 = Fraction(-1, 2) + Fraction(i % 7, 16)
            y0 = Fraction(-1, 4)
            out.append(("boundary_rect", ConvexPolygon((
                RationalPoint(x0, y0), RationalPoint(x0 + wid, y0),
                RationalPoint(x0 + wid, y0 + hgt), RationalPoint(x0, y0 + hgt)))))
        elif kind == 2:
            # rectangle of area exactly 2*64/n, widest feasible aspect
            hgt = Fraction(2 * MIN_AREA_NUMERATOR, n)
            wid = Fraction(1, 1)
            x0 = Fraction(-1, 2)
            y0 = Fraction(-1, 2) + Fraction(i % 5, 8)
            out.append(("flat_rect", ConvexPolygon((
                RationalPoint(x0, y0), RationalPoint(x0 + wid, y0),
                RationalPoint(x0 + wid, y0 + hgt), RationalPoint(x0, y0 + hgt)))))
        elif kind == 3:
            # thin triangle with area exactly 100/n
            hgt = Fraction(200, n)
            apex_x = Fraction(-1, 2) + Fraction(1 + i % 13, 16)
            out.append(("thin_triangle", ConvexPolygon((
                RationalPoint(Fraction(-1, 2), Fraction(0)),
                RationalPoint(Fraction(1, 2), Fraction(0)),
                RationalPoint(apex_x, hgt)))))
        else:
            if i % 2 == 0:
                out.append(("segment", ConvexPolygon((
                    Point(px[2], py[2]).to_rational(),
                    Point(px[3], py[3]).to_rational()))))
            else:
                out.append(("point", ConvexPolygon((Point(px[2], py[2]).to_rational(),))))
    return out


def run_prop1_fuzz(cfg: ExperimentConfig) -> ExperimentResult:
    """Fuzz campaign over synthetic convex polygons; zero violations required."""
    t0 = time.time()
    n = cfg.n_values[0] if cfg.n_values else 2000
    population = _fuzz_polygons(n, cfg.fuzz_count, cfg.master_seed)

    def work(item):
        idx, (kind, poly) = item
        try:
            rep = verify_sandwich(poly, n)
        except Exception as e:  # construction failure counts as violation
            return {"index": idx, "kind": kind, "ok": False, "error": str(e),
                    "slack_q1": None, "slack_q0": None, "applicable": None,
                    "trace": None}
        return {
            "index": idx, "kind": kind, "ok": rep.ok, "error": "",
            "slack_q1": float(rep.slack_q1),
            "slack_q0": float(rep.slack_q0) if rep.slack_q0 is not None else None,
            "applicable": rep.inscribe_applicable,
            "trace": None if rep.ok else {
                "q1": rep.trace1.to_json(),
                "q0": rep.trace0.to_json() if rep.trace0 else None,
            },
        }

    results = _parallel(work, list(enumerate(population)), cfg.worker_count)
    violations = [r for r in results if not r["ok"]]
    kinds = {}
    for r in results:
        kinds.setdefault(r["kind"], {"count": 0, "inscribe_applicable": 0})
        kinds[r["kind"]]["count"] += 1
        if r["applicable"]:
            kinds[r["kind"]]["inscribe_applicable"] += 1
    slack1 = [r["slack_q1"] for r in results if r["slack_q1"] is not None]
    slack0 = [r["slack_q0"] for r in results if r["slack_q0"] is not None]
    summary = {
        "n": n,
        "instances": len(results),
        "by_kind": kinds,
        "violations": len(violations),
        "failing": violations[:5],
        "worst_slack_q1": min(slack1) if slack1 else None,
        "worst_slack_q0": min(slack0) if slack0 else None,
    }
    assertions = {"zero_violations": len(violations) == 0}
    rows = [{
        "experiment": "prop1_fuzz", "region": "square", "n": n,
        "trial": r["index"], "seed": cfg.master_seed, "kind": r["kind"],
        "ok": r["ok"], "slack_q1": r["slack_q1"], "slack_q0": r["slack_q0"],
        "inscribe_applicable": r["applicable"],
    } for r in results]
    fields = ["experiment", "region", "n", "trial", "seed", "kind", "ok",
              "slack_q1", "slack_q0", "inscribe_applicable"]
    return ExperimentResult("prop1_fuzz", fields, rows, summary, assertions,
                            time.time() - t0)


# ---------------------------------------------------------------- census

def run_census(cfg: ExperimentConfig) -> ExperimentResult:
    """Hole census by size with two independent enumerators."""
    t0 = time.time()
    regions = cfg.region_specs()
    region = regions[0]

    tasks = [(ni, n, trial) for ni, n in enumerate(cfg.n_values)
             for trial in range(cfg.trials)]

    def work(task):
        ni, n, trial = task
        seed = _substream(cfg.master_seed, ni)
        ps = sample_uniform(region, n, seed, trial=trial)
        out = []
        for s in cfg.census_sizes:
            c1 = count_holes_of_size(ps, s, method="lex")
            c2 = count_holes_of_size(ps, s, method="gosper")
            out.append({
                "experiment": "census", "region": region.name, "n": n,
                "trial": trial, "seed": cfg.master_seed, "s": s,
                "count": c1, "count_alt": c2, "agree": c1 == c2,
                "below_n9": c1 <= n ** 9,
            })
        return out

    nested = _parallel(work, tasks, cfg.worker_count)
    rows = [row for group in nested for row in group]
    rows.sort(key=lambda r: (r["region"], r["n"], r["trial"], r["s"]))

    agree = all(r["agree"] for r in rows)
    below = all(r["below_n9"] for r in rows)
    summary = {"per_ns": []}
    for n in cfg.n_values:
        for s in cfg.census_sizes:
            counts = [r["count"] for r in rows if r["n"] == n and r["s"] == s]
            if counts:
                summary["per_ns"].append({
                    "n": n, "s": s, "mean_count": float(np.mean(counts)),
                    "min": min(counts), "max": max(counts),
                })
    assertions = {"enumerators_agree": agree, "counts_below_n9": below}
    fields = ["experiment", "region", "n", "trial", "seed", "s", "count",
              "count_alt", "agree", "below_n9"]
    return ExperimentResult("census", fields, rows, summary, assertions,
                            time.time() - t0)


RUNNERS = {
    "growth": run_growth,
    "shape": run_shape,
    "valtr": run_valtr,
    "lower_bound": run_lower_bound,
    "upper_trace": run_upper_trace,
    "prop1_fuzz": run_prop1_fuzz,
    "census": run_census,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    return RUNNERS[cfg.experiment](cfg)
