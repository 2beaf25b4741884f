"""Lattice-quadrilateral approximation of convex sets in the unit square.

Given a convex polygon H inside the unit square R (centered at the origin)
and a grid parameter n, `circumscribe` builds a quadrilateral Q1 on the
lattice {(-3/2 + i/3n, -3/2 + j/3n)} with H inside Q1 and
area(Q1) <= 2*area(H) + 40/n, and `inscribe` (for area(H) >= 64/n) builds
Q0 on the lattice with Q0 inside H and area(Q0) >= area(H)/32.

The construction: take a diametral pair (a, b) of H, the supporting lines
parallel to ab and the perpendiculars through a and b, bounding a rectangle
K with area(K) <= 2*area(H).  Q1's vertices are lattice points found inside
four squares of side 2/n hanging diagonally off K's corners.  For Q0, the
larger of the triangles abd / abc (d, c the supporting touch points) holds a
half-height rectangle U with base on ab and area(U) = area(triangle)/2;
Q0's vertices are lattice points inside the four corner squares of U.

Floating point appears only as a search hint for square centers (the unit
direction of ab is irrational).  Every postcondition and every "chosen point
inside its square" test is verified in exact rational arithmetic, using
squared lengths so irrational side positions never enter a comparison.
A verification failure raises: it means an implementation bug, not bad
input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import (
    Containment,
    ConvexPolygon,
    GeometryError,
    RationalPoint,
    contains_point,
    convex_hull,
    cross,
    diameter_pair,
    polygon_area,
    supporting_extremes,
)


class ApproxError(GeometryError):
    pass


class HoleTooSmall(ApproxError):
    pass


MIN_AREA_NUMERATOR = 64   # inscribe precondition: area(H) >= 64/n
_MIN_N = 8                # corner squares must stay inside the side-3 square


@dataclass(frozen=True)
class Lattice:
    """The (9n+1) x (9n+1) grid of spacing 1/(3n) covering the side-3 square."""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ApproxError("lattice parameter must be positive")

    @property
    def spacing(self) -> Fraction:
        return Fraction(1, 3 * self.n)

    def point(self, i: int, j: int) -> RationalPoint:
        if not (0 <= i <= 9 * self.n and 0 <= j <= 9 * self.n):
            raise ApproxError("lattice index out of range")
        return RationalPoint(Fraction(-3, 2) + Fraction(i, 3 * self.n),
                             Fraction(-3, 2) + Fraction(j, 3 * self.n))

    def nearest_index(self, x: float, y: float) -> tuple[int, int]:
        i = round((x + 1.5) * 3 * self.n)
        j = round((y + 1.5) * 3 * self.n)
        return min(max(i, 0), 9 * self.n), min(max(j, 0), 9 * self.n)

    def contains(self, p: RationalPoint) -> bool:
        ix = (p.x + Fraction(3, 2)) * (3 * self.n)
        iy = (p.y + Fraction(3, 2)) * (3 * self.n)
        return (ix.denominator == 1 and iy.denominator == 1
                and 0 <= ix <= 9 * self.n and 0 <= iy <= 9 * self.n)


@dataclass(frozen=True)
class LatticeQuadrilateral:
    """Four distinct lattice points in construction order.

    The point cycle may degenerate toward collinearity for extreme inputs,
    so geometric checks go through `hull()` (3 or 4 vertices)."""
    corners: tuple[RationalPoint, RationalPoint, RationalPoint, RationalPoint]
    lattice: Lattice

    def __post_init__(self):
        if len({c.key() for c in self.corners}) != 4:
            raise ApproxError("lattice quadrilateral needs 4 distinct vertices")
        for c in self.corners:
            if not self.lattice.contains(c):
                raise ApproxError("vertex is not a lattice point")

    def hull(self) -> ConvexPolygon:
        return convex_hull(list(self.corners))

    def area(self) -> Fraction:
        return self.hull().area()


@dataclass
class ApproxTrace:
    """Full construction record; exact rationals except the float hints."""
    n: int
    a: RationalPoint = None
    b: RationalPoint = None
    c: RationalPoint = None
    d: RationalPoint = None
    k_rect: Optional[tuple] = None          # K corners (exact)
    j_quad: Optional[tuple] = None          # quadrilateral a, c, b, d
    delta_apex: Optional[str] = None        # "d" or "c"
    e_foot: Optional[RationalPoint] = None
    u_rect: Optional[tuple] = None          # U corners f, h, k, j (exact)
    chosen: dict = field(default_factory=dict)   # label -> lattice point
    float_hints: bool = True

    def to_json(self) -> dict:
        def enc(p):
            if p is None:
                return None
            return {"x": f"{p.x.numerator}/{p.x.denominator}",
                    "y": f"{p.y.numerator}/{p.y.denominator}",
                    "x_dec": float(p.x), "y_dec": float(p.y)}

        return {
            "n": self.n,
            "a": enc(self.a), "b": enc(self.b), "c": enc(self.c), "d": enc(self.d),
            "k_rect": [enc(p) for p in self.k_rect] if self.k_rect else None,
            "j_quad": [enc(p) for p in self.j_quad] if self.j_quad else None,
            "delta_apex": self.delta_apex,
            "e_foot": enc(self.e_foot),
            "u_rect": [enc(p) for p in self.u_rect] if self.u_rect else None,
            "chosen": {k: enc(v) for k, v in self.chosen.items()},
            "float_hints": self.float_hints,
        }


def _check_inside_unit_square(H: ConvexPolygon):
    half = Fraction(1, 2)
    for v in H.vertices:
        if abs(v.x) > half or abs(v.y) > half:
            raise ApproxError("polygon must lie inside the unit square R")


def _dot(ax, ay, bx, by):
    return ax * bx + ay * by


def _square_point(lattice: Lattice, corner: RationalPoint, ux, uy, uu,
                  sgn_u: int, sgn_v: int, n: int, cx_hint: float, cy_hint: float):
    """Lattice point strictly inside a side-2/n square.

    The square hangs off `corner` in directions (sgn_u * u, sgn_v * uperp).
    The float hint locates the square center; the returned point passes the
    exact rational inside test (0 < offset < 2/n along both axes, compared
    via squared lengths).  A 5x5 neighbourhood fallback covers hint error;
    existence is guaranteed because the nearest lattice point to the true
    center is at most sqrt(2)/(6n) < 1/n away.
    """
    px, py = -uy, ux  # left normal of u
    lim = Fraction(4, n * n) * uu
    ci, cj = lattice.nearest_index(cx_hint, cy_hint)
    for di, dj in _SEARCH_ORDER:
        i, j = ci + di, cj + dj
        if not (0 <= i <= 9 * lattice.n and 0 <= j <= 9 * lattice.n):
            continue
        g = lattice.point(i, j)
        dt = sgn_u * _dot(g.x - corner.x, g.y - corner.y, ux, uy)
        if not (0 < dt and dt * dt < lim):
            continue
        dv = sgn_v * _dot(g.x - corner.x, g.y - corner.y, px, py)
        if 0 < dv and dv * dv < lim:
            return g
    raise ApproxError("no lattice point found in corner square (internal bug)")


_SEARCH_ORDER = [(di, dj) for di in range(-2, 3) for dj in range(-2, 3)]
_SEARCH_ORDER.sort(key=lambda t: (abs(t[0]) + abs(t[1]), t))


def circumscribe(H: ConvexPolygon, n: int) -> tuple[LatticeQuadrilateral, ApproxTrace]:
    """Lattice quadrilateral Q1 with H inside Q1, area(Q1) <= 2*area(H) + 40/n.

    Verified exactly before returning.  Degenerate H (a point or segment)
    is handled by widening K to width 1/(3n) perpendicular to the diameter,
    which keeps area(Q1) well under the 40/n budget.
    """
    if n < _MIN_N:
        raise ApproxError(f"grid parameter must be at least {_MIN_N}")
    vs = H.vertices
    if len(vs) == 0:
        raise ApproxError("cannot circumscribe the empty polygon")
    _check_inside_unit_square(H)
    lattice = Lattice(n)
    trace = ApproxTrace(n=n)

    if len(vs) == 1:
        a = b = vs[0]
    else:
        a, b = diameter_pair(H)
    trace.a, trace.b = a, b
    ux, uy = b.x - a.x, b.y - a.y
    if ux == 0 and uy == 0:
        ux, uy = Fraction(1), Fraction(0)
    uu = ux * ux + uy * uy
    px, py = -uy, ux

    if len(vs) >= 2:
        c, d = supporting_extremes(H, (ux, uy))
    else:
        c = d = vs[0]
    trace.c, trace.d = c, d

    ts = [_dot(v.x - a.x, v.y - a.y, ux, uy) for v in vs]
    ss = [_dot(v.x - a.x, v.y - a.y, px, py) for v in vs]
    tmin, tmax = min(ts), max(ts)
    smin, smax = min(ss), max(ss)
    if smin == smax:  # degenerate: widen K to 1/(3n) perpendicular to ab
        widen = uu / Fraction(6 * n)
        smin -= widen
        smax += widen
    if tmin == tmax:
        widen = uu / Fraction(6 * n)
        tmin -= widen
        tmax += widen

    def frame(t, s) -> RationalPoint:
        return RationalPoint(a.x + (t * ux + s * px) / uu,
                             a.y + (t * uy + s * py) / uu)

    k00 = frame(tmin, smin)
    k10 = frame(tmax, smin)
    k11 = frame(tmax, smax)
    k01 = frame(tmin, smax)
    trace.k_rect = (k00, k10, k11, k01)
    trace.j_quad = (a, c, b, d)

    L = math.sqrt(float(uu))
    uhx, uhy = float(ux) / L, float(uy) / L
    phx, phy = float(px) / L, float(py) / L
    off = 1.0 / n

    g00 = _square_point(lattice, k00, ux, uy, uu, -1, -1, n,
                        float(k00.x) - (uhx + phx) * off, float(k00.y) - (uhy + phy) * off)
    g10 = _square_point(lattice, k10, ux, uy, uu, +1, -1, n,
                        float(k10.x) + (uhx - phx) * off, float(k10.y) + (uhy - phy) * off)
    g11 = _square_point(lattice, k11, ux, uy, uu, +1, +1, n,
                        float(k11.x) + (uhx + phx) * off, float(k11.y) + (uhy + phy) * off)
    g01 = _square_point(lattice, k01, ux, uy, uu, -1, +1, n,
                        float(k01.x) - (uhx - phx) * off, float(k01.y) - (uhy - phy) * off)
    trace.chosen.update({"g_w": g00, "g_x": g10, "g_y": g11, "g_z": g01})

    q1 = LatticeQuadrilateral((g00, g10, g11, g01), lattice)
    hull = q1.hull()
    for v in vs:
        if not contains_point(hull, v, Containment.CLOSED):
            raise ApproxError("circumscribe verification failed: H not inside Q1")
    bound = 2 * polygon_area(H) + Fraction(40, n)
    if hull.area() > bound:
        raise ApproxError("circumscribe verification failed: area bound violated")
    return q1, trace


def inscribe(H: ConvexPolygon, n: int) -> tuple[LatticeQuadrilateral, ApproxTrace]:
    """Lattice quadrilateral Q0 inside H with area(Q0) >= area(H)/32.

    Requires area(H) >= 64/n; raises HoleTooSmall below that threshold.
    Verified exactly before returning.
    """
    if n < _MIN_N:
        raise ApproxError(f"grid parameter must be at least {_MIN_N}")
    _check_inside_unit_square(H)
    area_h = polygon_area(H)
    if area_h < Fraction(MIN_AREA_NUMERATOR, n):
        raise HoleTooSmall(f"inscribe needs area(H) >= {MIN_AREA_NUMERATOR}/n")
    lattice = Lattice(n)
    trace = ApproxTrace(n=n)

    a, b = diameter_pair(H)
    trace.a, trace.b = a, b
    ux, uy = b.x - a.x, b.y - a.y
    uu = ux * ux + uy * uy

    c, d = supporting_extremes(H, (ux, uy))
    trace.c, trace.d = c, d
    area_abd = abs(cross(a, b, d))
    area_abc = abs(cross(a, b, c))
    if area_abd >= area_abc:
        apex, apex_label = d, "d"
    else:
        apex, apex_label = c, "c"
    trace.delta_apex = apex_label
    trace.j_quad = (a, c, b, d)

    # foot of the perpendicular from the apex to line ab (exact)
    t_apex = _dot(apex.x - a.x, apex.y - a.y, ux, uy)
    e = RationalPoint(a.x + t_apex * ux / uu, a.y + t_apex * uy / uu)
    trace.e_foot = e

    # U: base on ab, top side through the midpoints of a-apex and b-apex
    jm = RationalPoint((a.x + apex.x) / 2, (a.y + apex.y) / 2)
    km = RationalPoint((b.x + apex.x) / 2, (b.y + apex.y) / 2)
    t_j = _dot(jm.x - a.x, jm.y - a.y, ux, uy)
    f = RationalPoint(a.x + t_j * ux / uu, a.y + t_j * uy / uu)
    h = RationalPoint(f.x + ux / 2, f.y + uy / 2)
    trace.u_rect = (f, h, km, jm)

    wx, wy = jm.x - f.x, jm.y - f.y   # exact perpendicular to ab
    ww = wx * wx + wy * wy
    if ww == 0:
        raise ApproxError("inscribe degenerated: apex on the diameter line")

    # sanity: area(U) = |fh x fj| must equal area(delta)/2 = |ab x a-apex|/4
    if 4 * abs(cross(f, h, jm)) != abs(cross(a, b, apex)):
        raise ApproxError("inscribe internal error: U area mismatch")
    lim_u = Fraction(4, n * n) * uu
    lim_w = Fraction(4, n * n) * ww

    Lu = math.sqrt(float(uu))
    Lw = math.sqrt(float(ww))
    uhx, uhy = float(ux) / Lu, float(uy) / Lu
    whx, why = float(wx) / Lw, float(wy) / Lw
    off = 1.0 / n

    def pick(corner, sgn_u, sgn_v, hx, hy):
        ci, cj = lattice.nearest_index(hx, hy)
        for di, dj in _SEARCH_ORDER:
            i, j = ci + di, cj + dj
            if not (0 <= i <= 9 * lattice.n and 0 <= j <= 9 * lattice.n):
                continue
            g = lattice.point(i, j)
            dt = sgn_u * _dot(g.x - corner.x, g.y - corner.y, ux, uy)
            if not (0 < dt and dt * dt < lim_u):
                continue
            dv = sgn_v * _dot(g.x - corner.x, g.y - corner.y, wx, wy)
            if 0 < dv and dv * dv < lim_w:
                return g
        raise ApproxError("no lattice point found in corner square (internal bug)")

    t_f = pick(f, +1, +1, float(f.x) + (uhx + whx) * off, float(f.y) + (uhy + why) * off)
    t_h = pick(h, -1, +1, float(h.x) - (uhx - whx) * off, float(h.y) - (uhy - why) * off)
    t_k = pick(km, -1, -1, float(km.x) - (uhx + whx) * off, float(km.y) - (uhy + why) * off)
    t_j2 = pick(jm, +1, -1, float(jm.x) + (uhx - whx) * off, float(jm.y) + (uhy - why) * off)
    trace.chosen.update({"t_f": t_f, "t_h": t_h, "t_k": t_k, "t_j": t_j2})

    q0 = LatticeQuadrilateral((t_f, t_h, t_k, t_j2), lattice)
    hull = q0.hull()
    for g in q0.corners:
        if not contains_point(H, g, Containment.CLOSED):
            raise ApproxError("inscribe verification failed: Q0 not inside H")
    if hull.area() < area_h / 32:
        raise ApproxError("inscribe verification failed: area bound violated")
    return q0, trace


@dataclass
class SandwichReport:
    """Exact audit of the circumscribe/inscribe pair for one polygon."""
    n: int
    area_h: Fraction
    q1: LatticeQuadrilateral
    trace1: ApproxTrace
    area_q1: Fraction
    slack_q1: Fraction                       # 2*area_h + 40/n - area_q1 >= 0
    q0: Optional[LatticeQuadrilateral] = None
    trace0: Optional[ApproxTrace] = None
    area_q0: Optional[Fraction] = None
    slack_q0: Optional[Fraction] = None      # area_q0 - area_h/32 >= 0
    chain_ok: Optional[bool] = None          # area_q1 <= 3*area_h <= 96*area_q0
    inscribe_applicable: bool = False

    @property
    def ok(self) -> bool:
        if self.slack_q1 < 0:
            return False
        if self.inscribe_applicable:
            return self.slack_q0 >= 0 and bool(self.chain_ok)
        return True


def verify_sandwich(H: ConvexPolygon, n: int) -> SandwichReport:
    """Run the full approximation audit: Q1 always, Q0 when area(H) >= 64/n.

    All inequalities (including the 96x chain used downstream) are checked
    as exact rationals; construction failures propagate as ApproxError.
    """
    area_h = polygon_area(H)
    q1, trace1 = circumscribe(H, n)
    area_q1 = q1.area()
    report = SandwichReport(
        n=n, area_h=area_h, q1=q1, trace1=trace1, area_q1=area_q1,
        slack_q1=2 * area_h + Fraction(40, n) - area_q1,
    )
    if area_h >= Fraction(MIN_AREA_NUMERATOR, n):
        q0, trace0 = inscribe(H, n)
        report.q0 = q0
        report.trace0 = trace0
        report.area_q0 = q0.area()
        report.slack_q0 = report.area_q0 - area_h / 32
        report.chain_ok = (area_q1 <= 3 * area_h) and (3 * area_h <= 96 * report.area_q0)
        report.inscribe_applicable = True
    return report
