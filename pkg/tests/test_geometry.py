"""Exact-geometry unit tests: orientation, hulls, areas, calipers, clipping."""
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexholes import (
    CCW,
    COLLINEAR,
    CW,
    Containment,
    ConvexPolygon,
    DegeneratePolygon,
    GeometryError,
    Point,
    RationalPoint,
    RegionSpec,
    clip_to_region,
    contains_point,
    convex_hull,
    diameter_pair,
    fan_triangulate,
    is_convex_position,
    orient,
    polygon_area,
    supporting_extremes,
)
from convexholes.geometry import triangle_area

coords = st.integers(min_value=-10 ** 6, max_value=10 ** 6)


def P(x, y):
    return Point(x, y)


def RP(x, y):
    return RationalPoint(Fraction(x), Fraction(y))


def test_orient_basic():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == CCW
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == COLLINEAR
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == CW


def test_orient_rational_and_mixed():
    assert orient(RP(0, 0), RP(Fraction(1, 3), 0), RP(0, Fraction(1, 7))) == CCW
    assert orient(P(0, 0), RP(Fraction(1, 2), Fraction(1, 2)), P(1, 1)) == COLLINEAR


@given(st.tuples(coords, coords), st.tuples(coords, coords), st.tuples(coords, coords))
def test_orient_antisymmetric(a, b, c):
    pa, pb, pc = P(*a), P(*b), P(*c)
    s = orient(pa, pb, pc)
    assert orient(pa, pc, pb) == -s
    assert orient(pb, pa, pc) == -s
    # cyclic invariance
    assert orient(pb, pc, pa) == s


def _in_closed_hull_exhaustive(p, pts):
    """p inside the closed hull of pts, by exhaustive simplex check."""
    for a in pts:
        if (a.x, a.y) == (p.x, p.y):
            return True
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if orient(a, b, p) == COLLINEAR and \
                    min(a.x, b.x) <= p.x <= max(a.x, b.x) and \
                    min(a.y, b.y) <= p.y <= max(a.y, b.y):
                return True
    m = len(pts)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                a, b, c = pts[i], pts[j], pts[k]
                s1, s2, s3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
                if s1 >= 0 and s2 >= 0 and s3 >= 0 and orient(a, b, c) == CCW:
                    return True
                if s1 <= 0 and s2 <= 0 and s3 <= 0 and orient(a, b, c) == CW:
                    return True
    return False


def test_hull_against_half_plane_oracle():
    """Every point on one (closed) side of each hull edge; vertices are a
    strictly convex cycle of input points; so the output *is* the strict
    hull.  Cross-checked with an exhaustive point-in-hull oracle."""
    rng = random.Random(42)
    for case in range(30):
        pts = []
        span = 12 if case % 2 else 100   # small spans force collinear triples
        seen = set()
        while len(pts) < (16 if case % 2 else 50):
            t = (rng.randint(-span, span), rng.randint(-span, span))
            if t not in seen:
                seen.add(t)
                pts.append(P(*t))
        hull = convex_hull(pts, scale=1)
        vs = hull.vertices
        assert not hull.degenerate
        vert_keys = set((int(v.x), int(v.y)) for v in vs)
        assert vert_keys <= seen  # vertices are input points
        for p in pts:  # all inputs weakly left of every directed edge
            for i in range(len(vs)):
                assert orient(vs[i], vs[(i + 1) % len(vs)], p) >= 0
        if case % 2:  # exhaustive cross-check on the small cases
            others = lambda v: [q for q in pts if (q.x, q.y) != (int(v.x), int(v.y))]
            for v in vs:
                assert not _in_closed_hull_exhaustive(P(int(v.x), int(v.y)), others(v))
            for p in pts:
                if (p.x, p.y) not in vert_keys:
                    assert _in_closed_hull_exhaustive(p, [q for q in pts if q != p])


def test_hull_square_and_interior_point():
    sq = [P(0, 0), P(4, 0), P(4, 4), P(0, 4)]
    assert len(convex_hull(sq, scale=1).vertices) == 4
    assert len(convex_hull(sq + [P(2, 2)], scale=1).vertices) == 4


def test_hull_contains_inputs_and_is_convex():
    rng = random.Random(7)
    for _ in range(20):
        pts = [P(rng.randint(-1000, 1000), rng.randint(-1000, 1000)) for _ in range(40)]
        hull = convex_hull(pts, scale=1)
        if hull.degenerate:
            continue
        assert is_convex_position([P(int(v.x), int(v.y)) for v in hull.vertices])
        for p in pts:
            assert contains_point(hull, p, Containment.CLOSED)


def test_convex_position_conventions():
    assert is_convex_position([P(0, 0), P(1, 0), P(0, 1)])
    assert not is_convex_position([P(0, 0), P(1, 1), P(2, 2)])
    assert not is_convex_position([P(0, 0), P(4, 0), P(4, 4), P(0, 4), P(2, 2)])
    # collinear point on hull boundary: false by convention
    assert not is_convex_position([P(0, 0), P(2, 0), P(4, 0), P(2, 3)])
    with pytest.raises(GeometryError):
        is_convex_position([P(0, 0), P(1, 1)])


def test_polygon_area_examples():
    unit = ConvexPolygon((RP(0, 0), RP(1, 0), RP(1, 1), RP(0, 1)))
    assert polygon_area(unit) == 1
    tri = ConvexPolygon((RP(0, 0), RP(1, 0), RP(0, 1)))
    assert polygon_area(tri) == Fraction(1, 2)


def test_area_equals_triangulation_sum():
    rng = random.Random(3)
    for _ in range(50):
        pts = [P(rng.randint(-500, 500), rng.randint(-500, 500)) for _ in range(12)]
        hull = convex_hull(pts, scale=1)
        if hull.degenerate:
            continue
        tris = fan_triangulate(hull)
        assert sum(triangle_area(*t) for t in tris) == polygon_area(hull)


def test_quadrilateral_diagonal_split():
    q = ConvexPolygon((RP(0, 0), RP(3, 1), RP(4, 5), RP(-1, 2)))
    a, b, c, d = q.vertices
    assert polygon_area(q) == triangle_area(a, b, c) + triangle_area(a, c, d)


def test_diameter_square_and_segment():
    h = Fraction(1, 2)
    sq = ConvexPolygon((RP(-h, -h), RP(h, -h), RP(h, h), RP(-h, h)))
    a, b = diameter_pair(sq)
    assert (a.x - b.x) ** 2 + (a.y - b.y) ** 2 == 2
    seg = ConvexPolygon((RP(1, 2), RP(4, 6)))
    assert set(p.key() for p in diameter_pair(seg)) == {(1, 2), (4, 6)}
    with pytest.raises(DegeneratePolygon):
        diameter_pair(ConvexPolygon((RP(0, 0),)))


def test_diameter_matches_all_pairs_on_random_hulls():
    rng = random.Random(11)
    for _ in range(1000):
        pts = [P(rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6))
               for _ in range(rng.randint(3, 20))]
        hull = convex_hull(pts, scale=1)
        if hull.degenerate:
            continue
        a, b = diameter_pair(hull)
        got = (a.x - b.x) ** 2 + (a.y - b.y) ** 2
        best = max((u.x - v.x) ** 2 + (u.y - v.y) ** 2
                   for u in hull.vertices for v in hull.vertices)
        assert got == best


def test_supporting_extremes():
    h = Fraction(1, 2)
    sq = ConvexPolygon((RP(-h, -h), RP(h, -h), RP(h, h), RP(-h, h)))
    hi, lo = supporting_extremes(sq, (1, 0))
    assert hi.y == h and lo.y == -h
    tri = ConvexPolygon((RP(0, 0), RP(4, 0), RP(1, 3)))
    hi, lo = supporting_extremes(tri, (4, 0))  # direction along the base
    assert hi.key() == (1, 3)
    assert lo.y == 0


def test_supporting_extremes_definition_on_random_hulls():
    rng = random.Random(5)
    for _ in range(50):
        pts = [P(rng.randint(-100, 100), rng.randint(-100, 100)) for _ in range(15)]
        hull = convex_hull(pts, scale=1)
        if hull.degenerate:
            continue
        d = (rng.randint(-5, 5), rng.randint(-5, 5))
        if d == (0, 0):
            d = (1, 0)
        hi, lo = supporting_extremes(hull, d)
        nx, ny = -Fraction(d[1]), Fraction(d[0])
        vals = [nx * v.x + ny * v.y for v in hull.vertices]
        assert nx * hi.x + ny * hi.y == max(vals)
        assert nx * lo.x + ny * lo.y == min(vals)


def test_contains_point_modes():
    h = Fraction(1, 2)
    sq = ConvexPolygon((RP(-h, -h), RP(h, -h), RP(h, h), RP(-h, h)))
    assert contains_point(sq, RP(0, 0), Containment.STRICT_INTERIOR)
    corner = RP(h, h)
    assert not contains_point(sq, corner, Containment.STRICT_INTERIOR)
    assert contains_point(sq, corner, Containment.CLOSED)
    mid = RP(h, 0)
    assert not contains_point(sq, mid, Containment.STRICT_INTERIOR)
    assert contains_point(sq, mid, Containment.CLOSED)


def test_clip_and_fan_examples():
    R = RegionSpec.unit_square()
    inner = ConvexPolygon((RP(Fraction(-1, 4), Fraction(-1, 4)), RP(Fraction(1, 4), Fraction(-1, 4)),
                           RP(Fraction(1, 4), Fraction(1, 4)), RP(Fraction(-1, 4), Fraction(1, 4))))
    c = clip_to_region(inner, R)
    assert polygon_area(c) == polygon_area(inner)
    assert len(fan_triangulate(c)) == 2
    big = Fraction(3, 2)
    S = ConvexPolygon((RP(-big, -big), RP(big, -big), RP(big, big), RP(-big, big)))
    c2 = clip_to_region(S, R)
    assert polygon_area(c2) == 1
    assert len(fan_triangulate(c2)) == 2


def test_clip_straddling_exact_area_sum():
    R = RegionSpec.unit_square()
    rng = random.Random(17)
    for _ in range(100):
        pts = [RP(Fraction(rng.randint(-12, 12), 8), Fraction(rng.randint(-12, 12), 8))
               for _ in range(4)]
        hull = convex_hull(pts)
        if hull.degenerate:
            continue
        c = clip_to_region(hull, R)
        if c.degenerate:
            continue
        tris = fan_triangulate(c)
        assert len(tris) <= 8
        assert sum(triangle_area(*t) for t in tris) == polygon_area(c)


def test_point_validation():
    with pytest.raises(TypeError):
        Point(1.5, 2)
    with pytest.raises(GeometryError):
        Point(4 * 2 ** 30, 0)
