"""Exact convex-position probabilities and derived tail bounds.

The two closed forms (r uniform points in a parallelogram, resp. triangle,
are in convex position):

    parallelogram:  (C(2r-2, r-1) / r!)**2
    triangle:       2**r (3r-3)! / ((r-1)!**3 (2r)!)

are evaluated as exact rationals via big-integer factorials; the natural log
comes from lgamma for use at large r.  Bound checks compare exact rationals
against exact rationals (r**-2r, r**-r) -- floating point never decides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, factorial, lgamma, log, log1p
import numpy as np
from numba import njit

from .holes import _subset_hull_empty
from .sampler import RegionSpec, SeedSpec, _sample_kernel


class ProbabilityError(ValueError):
    pass


@dataclass(frozen=True)
class ExactProbability:
    value: Fraction
    log_value: float

    def __post_init__(self):
        if not (0 < self.value <= 1):
            raise ProbabilityError("probability out of range")


def p_convex_parallelogram(r: int) -> ExactProbability:
    """Probability that r uniform points in a parallelogram are in convex
    position: (C(2r-2, r-1)/r!)^2."""
    if r < 3:
        raise ProbabilityError("defined for r >= 3")
    value = Fraction(comb(2 * r - 2, r - 1), factorial(r)) ** 2
    logv = 2.0 * (lgamma(2 * r - 1) - 2.0 * lgamma(r) - lgamma(r + 1))
    return ExactProbability(value, logv)


def p_convex_triangle(r: int) -> ExactProbability:
    """Probability that r uniform points in a triangle are in convex
    position: 2^r (3r-3)! / ((r-1)!^3 (2r)!)."""
    if r < 3:
        raise ProbabilityError("defined for r >= 3")
    value = Fraction(2 ** r * factorial(3 * r - 3),
                     factorial(r - 1) ** 3 * factorial(2 * r))
    logv = r * log(2.0) + lgamma(3 * r - 2) - 3.0 * lgamma(r) - lgamma(2 * r + 1)
    return ExactProbability(value, logv)


def check_square_lower_bound(r: int) -> bool:
    """Exact check p_parallelogram(r) >= r**(-2r)."""
    return p_convex_parallelogram(r).value >= Fraction(1, r ** (2 * r))


def check_triangle_upper_bound(r: int) -> bool:
    """Exact check p_triangle(r) <= r**(-r)."""
    return p_convex_triangle(r).value <= Fraction(1, r ** r)


def triangle_bound_threshold(r_max: int = 200) -> int:
    """Smallest r such that p_triangle(r) <= r**-r holds from r on up to r_max.

    The triangle bound is only claimed for sufficiently large r; this pins
    the threshold by exact sweep."""
    flags = {r: check_triangle_upper_bound(r) for r in range(3, r_max + 1)}
    threshold = None
    for r in range(r_max, 2, -1):
        if flags[r]:
            threshold = r
        else:
            break
    if threshold is None:
        raise ProbabilityError(f"triangle bound never holds up to r={r_max}")
    return threshold


@dataclass(frozen=True)
class ChernoffParams:
    """Parameters for the Bernoulli-sum tail bound: q >= p, s >= r."""
    p: float
    q: float
    r: int
    s: int

    def __post_init__(self):
        if not (0.0 <= self.p <= self.q <= 1.0):
            raise ProbabilityError("need 0 <= p <= q <= 1")
        if not (1 <= self.r <= self.s):
            raise ProbabilityError("need 1 <= r <= s")


def chernoff_tail(params: ChernoffParams) -> float:
    """Upper bound on Pr(X >= (3/2) q s) for X a sum of r Bernoulli(p)
    variables: exp(-q*s/16)."""
    return exp(-params.q * params.s / 16.0)


@dataclass(frozen=True)
class LowerBoundPlan:
    """Strip-partition plan: t points per strip, k = floor(n/t) strips."""
    n: int
    t: int
    k: int

    def __post_init__(self):
        if self.t < 1 or self.n < 1:
            raise ProbabilityError("plan needs positive n and t")
        if self.t * self.k > self.n:
            raise ProbabilityError("t*k must not exceed n")

    @property
    def asymptotic_regime(self) -> bool:
        return self.t >= 3

    @staticmethod
    def from_n(n: int) -> "LowerBoundPlan":
        """t = floor(log n / (2 log log n)); meaningful only for n >= 16."""
        if n < 16:
            raise ProbabilityError("plan formula needs n >= 16")
        t = int(math.floor(log(n) / (2.0 * log(log(n)))))
        t = max(t, 1)
        return LowerBoundPlan(n, t, n // t)

    @staticmethod
    def with_t(n: int, t: int) -> "LowerBoundPlan":
        return LowerBoundPlan(n, t, n // t)


def lower_bound_failure_prob(plan: LowerBoundPlan) -> tuple[float, float]:
    """(exact-exponent form, e-bound) for the event that no strip of t
    points is in convex position:

        (1 - t**(-2t))**(n/t)  <=  exp(-n * t**(-2t-1)).

    Requires t >= 3 (the regime where the per-strip bound t**-2t applies).
    """
    if plan.t < 3:
        raise ProbabilityError("failure bound needs t >= 3")
    x = float(plan.t) ** (-2 * plan.t)
    exact_form = exp((plan.n / plan.t) * log1p(-x))
    e_bound = exp(-plan.n * float(plan.t) ** (-2 * plan.t - 1))
    return exact_form, e_bound


@njit(cache=True, nogil=True)
def _mc_convex_position(kind, iparams, cumw, r, trials, master, trial0):
    """Count trials whose r sampled points are in convex position."""
    xs = np.empty(r, np.int64)
    ys = np.empty(r, np.int64)
    ordx = np.empty(r, np.int64)
    ordy = np.empty(r, np.int64)
    lower = np.empty(r + 2, np.int64)
    upper = np.empty(r + 2, np.int64)
    cyc = np.empty(r + 2, np.int64)
    hits = 0
    full = (1 << r) - 1
    for t in range(trials):
        _sample_kernel(kind, iparams, cumw, r, master, np.uint64(trial0 + t), xs, ys)
        # insertion sort by (x, y); r is tiny
        for i in range(r):
            ordx[i] = xs[i]
            ordy[i] = ys[i]
        for i in range(1, r):
            kx = ordx[i]
            ky = ordy[i]
            j = i - 1
            while j >= 0 and (ordx[j] > kx or (ordx[j] == kx and ordy[j] > ky)):
                ordx[j + 1] = ordx[j]
                ordy[j + 1] = ordy[j]
                j -= 1
            ordx[j + 1] = kx
            ordy[j + 1] = ky
        convex, _ = _subset_hull_empty(ordx, ordy, r, full, lower, upper, cyc)
        if convex:
            hits += 1
    return hits


def empirical_p_convex(region: RegionSpec, r: int, trials: int, seed,
                       substream: int = 0) -> tuple[float, float]:
    """Monte Carlo estimate of the convex-position probability.

    Returns (estimate, binomial standard error).  `substream` decorrelates
    rows sharing one master seed (Weyl increment on the key).
    """
    if r < 3:
        raise ProbabilityError("r must be at least 3")
    if trials < 1:
        raise ProbabilityError("trials must be positive")
    master = seed.master_seed if isinstance(seed, SeedSpec) else int(seed)
    master = (master + 0x9E3779B97F4A7C15 * substream) % (2 ** 64)
    kind, iparams, cumw = region._kernel_args()
    hits = int(_mc_convex_position(kind, iparams, cumw, r, trials,
                                   np.uint64(master), 0))
    est = hits / trials
    se = math.sqrt(max(est * (1.0 - est), 1e-300) / trials)
    return est, se
