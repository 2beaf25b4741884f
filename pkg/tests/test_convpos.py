"""Convex-position probabilities: exact values, bounds, Monte Carlo, tails."""
import math
from fractions import Fraction

import numpy as np
import pytest

from convexholes import (
    ChernoffParams,
    LowerBoundPlan,
    ProbabilityError,
    RegionSpec,
    chernoff_tail,
    check_square_lower_bound,
    check_triangle_upper_bound,
    empirical_p_convex,
    lower_bound_failure_prob,
    p_convex_parallelogram,
    p_convex_triangle,
    triangle_bound_threshold,
)


def test_parallelogram_exact_values():
    assert p_convex_parallelogram(3).value == 1
    assert p_convex_parallelogram(4).value == Fraction(25, 36)
    assert p_convex_parallelogram(5).value == Fraction(49, 144)
    with pytest.raises(ProbabilityError):
        p_convex_parallelogram(2)


def test_triangle_exact_values():
    assert p_convex_triangle(3).value == 1
    assert p_convex_triangle(4).value == Fraction(2, 3)
    with pytest.raises(ProbabilityError):
        p_convex_triangle(2)


def test_independent_product_form_evaluation():
    # telescoped product route: p(r) = 2^r * prod_{i=1..r-1} i/(2r-i) ... the
    # triangle formula re-derived as a product of factorial ratios
    r = 10
    val = Fraction(2 ** r)
    num = 1
    for i in range(1, 3 * r - 2):
        num *= i
    den = 1
    for i in range(1, r):
        den *= i
    den = den ** 3
    for i in range(1, 2 * r + 1):
        den *= i
    assert p_convex_triangle(r).value == val * Fraction(num, den)
    # parallelogram: independent evaluation via binomial recurrence
    from math import comb, factorial
    for r in (4, 7, 12):
        c = comb(2 * r - 2, r - 1)
        assert p_convex_parallelogram(r).value == Fraction(c * c, factorial(r) ** 2)


def test_log_values_agree_with_exact():
    for r in range(3, 201):
        for fn in (p_convex_parallelogram, p_convex_triangle):
            e = fn(r)
            exact_log = math.log(e.value.numerator) - math.log(e.value.denominator)
            if exact_log == 0.0:
                assert abs(e.log_value) < 1e-12
            else:
                assert abs(e.log_value - exact_log) <= 1e-12 * abs(exact_log)


def test_square_lower_bound_sweep():
    assert check_square_lower_bound(3)  # 1 >= 3^-6
    assert all(check_square_lower_bound(r) for r in range(3, 101))


def test_triangle_upper_bound_threshold():
    th = triangle_bound_threshold(200)
    assert 3 < th <= 200
    assert all(check_triangle_upper_bound(r) for r in range(th, 201))
    assert not check_triangle_upper_bound(th - 1)


def test_probabilities_strictly_decreasing():
    prev_p = p_convex_parallelogram(4).value
    prev_t = p_convex_triangle(4).value
    for r in range(5, 201):
        cur_p = p_convex_parallelogram(r).value
        cur_t = p_convex_triangle(r).value
        assert cur_p < prev_p
        assert cur_t < prev_t
        prev_p, prev_t = cur_p, cur_t


def test_chernoff_tail_basics():
    assert math.isclose(chernoff_tail(ChernoffParams(0.1, 0.16, 100, 100)),
                        math.exp(-1.0))
    vals = [chernoff_tail(ChernoffParams(0.1, 0.1, s, s)) for s in (10, 100, 1000, 10000)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ProbabilityError):
        ChernoffParams(0.5, 0.4, 10, 10)
    with pytest.raises(ProbabilityError):
        ChernoffParams(0.1, 0.2, 10, 5)


def test_chernoff_tail_against_binomial_mc():
    # p = q = 0.1, r = s = 1000: empirical Pr(X >= 150) must sit below
    # exp(-100/16) + 3 sigma
    rng = np.random.default_rng(123)
    trials = 10 ** 6
    x = rng.binomial(1000, 0.1, size=trials)
    freq = float((x >= 150).mean())
    bound = math.exp(-1000 * 0.1 / 16.0)
    sigma = math.sqrt(bound * (1 - bound) / trials)
    assert freq <= bound + 3 * sigma


def test_lower_bound_plan():
    plan = LowerBoundPlan.from_n(10 ** 6)
    assert plan.t >= 1 and plan.t * plan.k <= plan.n
    assert LowerBoundPlan.from_n(2000).t == 1  # formula regime is asymptotic
    explicit = LowerBoundPlan.with_t(2000, 5)
    assert explicit.k == 400


def test_failure_prob_forms():
    plan = LowerBoundPlan.with_t(10 ** 6, 3)
    exact, ebound = lower_bound_failure_prob(plan)
    assert 0.0 < exact <= ebound < 1.0
    # doubling n: bound non-increasing
    prev = None
    for n in (10 ** 4, 2 * 10 ** 4, 4 * 10 ** 4, 8 * 10 ** 4):
        _, eb = lower_bound_failure_prob(LowerBoundPlan.with_t(n, 3))
        if prev is not None:
            assert eb <= prev
        prev = eb
    # e-bound dominates the exact form at many n
    for n in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
        exact, eb = lower_bound_failure_prob(LowerBoundPlan.with_t(n, 4))
        assert eb >= exact
    with pytest.raises(ProbabilityError):
        lower_bound_failure_prob(LowerBoundPlan.with_t(100, 2))


def test_empirical_p_convex_square_triangle():
    sq = RegionSpec.unit_square()
    tri = RegionSpec.triangle()
    est, se = empirical_p_convex(sq, 4, 30000, 5)
    assert abs(est - 25 / 36) <= 3 * se
    est, se = empirical_p_convex(tri, 4, 30000, 5, substream=1)
    assert abs(est - 2 / 3) <= 3 * se
    est, _ = empirical_p_convex(sq, 3, 20000, 5, substream=2)
    assert est >= 1 - 1e-4


def test_empirical_p_convex_affine_invariance_in_strips():
    """Convex-position frequency of strip groups matches the parallelogram
    value: the linchpin of the strip construction."""
    from convexholes import sample_uniform, strip_partition, is_convex_position
    reg = RegionSpec.unit_square()
    t = 4
    hits = 0
    total = 0
    for trial in range(60):
        ps = sample_uniform(reg, 400, 40404, trial=trial)
        for members, _ in strip_partition(ps, t):
            hits += is_convex_position(members)
            total += 1
    p = float(p_convex_parallelogram(t).value)
    se = math.sqrt(p * (1 - p) / total)
    assert abs(hits / total - p) <= 3 * se
