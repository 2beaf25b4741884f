"""Exact planar primitives on grid-integer and rational coordinates.

All predicates (orientation, containment, areas, distances) are computed in
exact arithmetic: Python integers for grid points, `fractions.Fraction` for
rational points.  No floating point ever decides a geometric predicate here.

Conventions, fixed once and used everywhere:
  * collinear triples are never "in convex position";
  * collinear points on a hull boundary are not hull vertices;
  * ties in extreme-point selection break to the lexicographically
    (x, then y) smallest point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

CCW = 1
COLLINEAR = 0
CW = -1

DEFAULT_SCALE = 2 ** 30          # grid units per unit length
COORD_LIMIT = 3 * DEFAULT_SCALE  # loose cap: everything lives in the side-3 square


class GeometryError(ValueError):
    pass


class DegeneratePolygon(GeometryError):
    pass


@dataclass(frozen=True, slots=True)
class Point:
    """Immutable point on the integer grid (grid units)."""
    x: int
    y: int

    def __post_init__(self):
        if not isinstance(self.x, int) or not isinstance(self.y, int):
            raise TypeError(f"grid coordinates must be int, got ({self.x!r}, {self.y!r})")
        if abs(self.x) > COORD_LIMIT or abs(self.y) > COORD_LIMIT:
            raise GeometryError(f"point ({self.x}, {self.y}) outside the side-3 square")

    def to_rational(self, scale: int = DEFAULT_SCALE) -> "RationalPoint":
        return RationalPoint(Fraction(self.x, scale), Fraction(self.y, scale))


@dataclass(frozen=True, slots=True)
class RationalPoint:
    """Exact point in unit lengths; coordinates are Fractions in [-3/2, 3/2]."""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)


AnyPoint = Union[Point, RationalPoint]


class Containment(enum.Enum):
    STRICT_INTERIOR = "strict_interior"
    CLOSED = "closed"


def orient(p: AnyPoint, q: AnyPoint, r: AnyPoint) -> int:
    """Sign of the cross product (q-p) x (r-p): CCW, CW or COLLINEAR.

    Exact for int and Fraction coordinates (mixing is fine)."""
    v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if v > 0:
        return CCW
    if v < 0:
        return CW
    return COLLINEAR


def cross(o: AnyPoint, a: AnyPoint, b: AnyPoint):
    """Exact cross product (a-o) x (b-o); twice the signed triangle area."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _lexkey(p: AnyPoint):
    return (p.x, p.y)


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise vertex cycle with no collinear triples stored.

    Zero, one and two vertex instances are allowed but flagged degenerate;
    they represent the empty set, a point and a segment respectively.
    """
    vertices: tuple[RationalPoint, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        m = len(vs)
        if m >= 2 and len({v.key() for v in vs}) != m:
            raise GeometryError("repeated vertex in polygon")
        if m >= 3:
            for i in range(m):
                if orient(vs[i], vs[(i + 1) % m], vs[(i + 2) % m]) != CCW:
                    raise GeometryError("vertices must be a strictly CCW cycle")

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    def area(self) -> Fraction:
        """Exact shoelace area (unit lengths squared); 0 for degenerate."""
        vs = self.vertices
        if len(vs) < 3:
            return Fraction(0)
        s = Fraction(0)
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            s += a.x * b.y - a.y * b.x
        return s / 2

    @staticmethod
    def from_ccw(points: Sequence[RationalPoint]) -> "ConvexPolygon":
        """Build from a CCW cycle, dropping duplicates and collinear vertices."""
        pts = list(points)
        out: list[RationalPoint] = []
        for p in pts:
            if not out or p.key() != out[-1].key():
                out.append(p)
        while len(out) >= 2 and out[0].key() == out[-1].key():
            out.pop()
        if len(out) >= 3:
            changed = True
            while changed and len(out) >= 3:
                changed = False
                m = len(out)
                kept = []
                for i in range(m):
                    if orient(out[(i - 1) % m], out[i], out[(i + 1) % m]) == CCW:
                        kept.append(out[i])
                    else:
                        changed = True
                out = kept
        return ConvexPolygon(tuple(out))


def _strict_hull_points(ps: Sequence[AnyPoint]) -> list[AnyPoint]:
    """Monotone chain; strictly convex output (collinear boundary points dropped)."""
    pts = sorted({(p.x, p.y) for p in ps})
    mk = lambda t: _mk_like(ps[0], t)
    if len(pts) == 1:
        return [mk(pts[0])]
    if len(pts) == 2:
        return [mk(pts[0]), mk(pts[1])]
    lower: list[tuple] = []
    for t in pts:
        while len(lower) >= 2 and _cross_t(lower[-2], lower[-1], t) <= 0:
            lower.pop()
        lower.append(t)
    upper: list[tuple] = []
    for t in reversed(pts):
        while len(upper) >= 2 and _cross_t(upper[-2], upper[-1], t) <= 0:
            upper.pop()
        upper.append(t)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:  # all collinear
        return [mk(pts[0]), mk(pts[-1])]
    return [mk(t) for t in cycle]


def _cross_t(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _mk_like(sample: AnyPoint, t: tuple) -> AnyPoint:
    if isinstance(sample, Point):
        return Point(int(t[0]), int(t[1]))
    return RationalPoint(t[0], t[1])


def convex_hull(ps: Sequence[AnyPoint], scale: int = DEFAULT_SCALE) -> ConvexPolygon:
    """Minimal CCW hull of grid or rational points as a ConvexPolygon.

    Grid points are mapped to unit lengths by `scale`; collinear boundary
    points are excluded from the vertex list.
    """
    if len(ps) < 1:
        raise GeometryError("convex_hull needs at least one point")
    hull = _strict_hull_points(ps)
    verts = []
    for p in hull:
        if isinstance(p, Point):
            verts.append(p.to_rational(scale))
        else:
            verts.append(p)
    return ConvexPolygon(tuple(verts))


def is_convex_position(ps: Sequence[AnyPoint]) -> bool:
    """True iff every point is a strict hull vertex.

    Any collinear triple on the hull boundary (and any interior point)
    yields False; duplicate points yield False."""
    if len(ps) < 3:
        raise GeometryError("convex position is defined for 3 or more points")
    if len({(p.x, p.y) for p in ps}) != len(ps):
        return False
    return len(_strict_hull_points(ps)) == len(ps)


def polygon_area(poly: ConvexPolygon) -> Fraction:
    return poly.area()


def _sqdist(a: AnyPoint, b: AnyPoint):
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def diameter_pair(poly: ConvexPolygon) -> tuple[RationalPoint, RationalPoint]:
    """Vertex pair attaining the maximum distance, by rotating calipers.

    Exact squared-distance comparisons; among ties the lexicographically
    smallest ordered pair wins.  Raises DegeneratePolygon for single points.
    """
    vs = poly.vertices
    m = len(vs)
    if m == 0:
        raise DegeneratePolygon("empty polygon has no diameter")
    if m == 1:
        raise DegeneratePolygon("single-point polygon has no diameter")

    def ordered(a, b):
        return (a, b) if _lexkey(a) <= _lexkey(b) else (b, a)

    if m == 2:
        return ordered(vs[0], vs[1])

    best_d = None
    best_pair = None

    def consider(i, j):
        nonlocal best_d, best_pair
        a, b = ordered(vs[i], vs[j])
        d = _sqdist(a, b)
        k = (_lexkey(a), _lexkey(b))
        if best_d is None or d > best_d or (d == best_d and k < (_lexkey(best_pair[0]), _lexkey(best_pair[1]))):
            best_d = d
            best_pair = (a, b)

    # rotating calipers: advance j past the vertex farthest from edge (i, i+1)
    j = 1
    steps = 0
    for i in range(m):
        i1 = (i + 1) % m
        while True:
            j1 = (j + 1) % m
            # move while the next vertex is farther from line (vs[i], vs[i1])
            cur = cross(vs[i], vs[i1], vs[j])
            nxt = cross(vs[i], vs[i1], vs[j1])
            if nxt > cur:
                j = j1
                steps += 1
                if steps > 4 * m:
                    raise GeometryError("rotating calipers failed to terminate")
            else:
                break
        consider(i, j)
        consider(i1, j)
        if cross(vs[i], vs[i1], vs[(j + 1) % m]) == cross(vs[i], vs[i1], vs[j]):
            consider(i, (j + 1) % m)
            consider(i1, (j + 1) % m)
    return best_pair


def supporting_extremes(poly: ConvexPolygon, direction: tuple) -> tuple[RationalPoint, RationalPoint]:
    """Touch points of the two supporting lines parallel to `direction`.

    Returns (hi, lo): hi maximizes the dot product with the left normal
    (-dy, dx), lo minimizes it; ties break lexicographically smallest.
    """
    dx, dy = Fraction(direction[0]), Fraction(direction[1])
    if dx == 0 and dy == 0:
        raise GeometryError("direction must be nonzero")
    nx, ny = -dy, dx
    vs = poly.vertices
    if not vs:
        raise DegeneratePolygon("empty polygon")
    hi = lo = None
    hi_v = lo_v = None
    for v in vs:
        d = nx * v.x + ny * v.y
        if hi is None or d > hi or (d == hi and _lexkey(v) < _lexkey(hi_v)):
            hi, hi_v = d, v
        if lo is None or d < lo or (d == lo and _lexkey(v) < _lexkey(lo_v)):
            lo, lo_v = d, v
    return hi_v, lo_v


def contains_point(poly: ConvexPolygon, p: AnyPoint, mode: Containment = Containment.CLOSED) -> bool:
    """Exact side tests of p against every edge of the polygon."""
    vs = poly.vertices
    m = len(vs)
    if m == 0:
        return False
    if m == 1:
        if mode is Containment.STRICT_INTERIOR:
            return False
        return Fraction(p.x) == vs[0].x and Fraction(p.y) == vs[0].y
    if m == 2:
        if mode is Containment.STRICT_INTERIOR:
            return False
        a, b = vs
        if orient(a, b, p) != COLLINEAR:
            return False
        return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
                and min(a.y, b.y) <= p.y <= max(a.y, b.y))
    for i in range(m):
        s = orient(vs[i], vs[(i + 1) % m], p)
        if mode is Containment.STRICT_INTERIOR:
            if s != CCW:
                return False
        else:
            if s == CW:
                return False
    return True


def clip_to_region(poly: ConvexPolygon, region) -> ConvexPolygon:
    """Exact convex clipping of `poly` to a convex polygonal region.

    `region` is either a ConvexPolygon or anything exposing
    `boundary_polygon()` (e.g. a RegionSpec).  An empty intersection comes
    back as the empty-polygon marker (zero vertices).
    """
    clip = region if isinstance(region, ConvexPolygon) else region.boundary_polygon()
    if clip.degenerate:
        raise GeometryError("clip region must be a non-degenerate convex polygon")
    subject = list(poly.vertices)
    cvs = clip.vertices
    for i in range(len(cvs)):
        a, b = cvs[i], cvs[(i + 1) % len(cvs)]
        if not subject:
            break
        out: list[RationalPoint] = []
        m = len(subject)
        for j in range(m):
            cur, nxt = subject[j], subject[(j + 1) % m]
            cur_in = orient(a, b, cur) != CW
            nxt_in = orient(a, b, nxt) != CW
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                out.append(_line_segment_intersection(a, b, cur, nxt))
        subject = out
    return ConvexPolygon.from_ccw(subject)


def _line_segment_intersection(a, b, p, q) -> RationalPoint:
    """Exact intersection of segment pq with the (infinite) line through ab."""
    sp = cross(a, b, p)
    sq = cross(a, b, q)
    denom = sp - sq
    if denom == 0:
        raise GeometryError("segment parallel to clip edge in intersection")
    t = Fraction(sp, denom)
    return RationalPoint(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def fan_triangulate(poly: ConvexPolygon) -> list[tuple[RationalPoint, RationalPoint, RationalPoint]]:
    """Fan triangulation from the lexicographically smallest vertex.

    Triangle areas sum exactly to the polygon area; degenerate polygons give
    an empty list."""
    vs = poly.vertices
    if len(vs) < 3:
        return []
    start = min(range(len(vs)), key=lambda i: _lexkey(vs[i]))
    order = [vs[(start + k) % len(vs)] for k in range(len(vs))]
    return [(order[0], order[i], order[i + 1]) for i in range(1, len(order) - 1)]


def triangle_area(a: AnyPoint, b: AnyPoint, c: AnyPoint) -> Fraction:
    """Exact unsigned triangle area."""
    return Fraction(abs(cross(a, b, c))) / 2
