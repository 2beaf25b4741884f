"""Seedable uniform sampling of point sets over convex regions.

Sampling is driven by the counter-based stream in `rng`, so a point set is a
pure function of (region, n, master_seed, trial).  Coordinates are snapped to
the integer grid (floor, `scale` units per unit length); a point whose snap
lands outside the region, or whose x-coordinate collides with an already
accepted point, is resampled with fresh draws.  Distinct x-coordinates make
exact duplicates impossible and keep strip partitions well defined.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .geometry import (
    DEFAULT_SCALE,
    ConvexPolygon,
    GeometryError,
    Point,
    RationalPoint,
    orient,
)
from .rng import _draw_u64_pair, _u64_to_unit

_KIND_SQUARE = 0
_KIND_TRIANGLE = 1
_KIND_DISK = 2
_KIND_POLYGON = 3

_HALF_GRID = DEFAULT_SCALE // 2  # 2**29, half the unit square in grid units
_MASK30 = np.uint64((1 << 30) - 1)

# Unit-area triangle with grid-exact vertices: (-1,-1/2), (1,-1/2), (0,1/2).
_TRIANGLE_GRID = ((-DEFAULT_SCALE, -_HALF_GRID), (DEFAULT_SCALE, -_HALF_GRID), (0, _HALF_GRID))

# Disk radius = _DISK_R_NUM / 2**32; |pi r^2 - 1| < 2**-30.
_DISK_R_NUM = 2423175810
_DISK_R_DEN = 2 ** 32


class SamplingError(ValueError):
    pass


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus the fixed per-trial stream derivation rule."""
    master_seed: int
    derivation: str = "philox4x32-10(key=master_seed, counter=(draw_index, trial))"

    def __post_init__(self):
        if not (0 <= self.master_seed < 2 ** 64):
            raise SamplingError("master_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class RegionSpec:
    """A bounded convex region of unit area.

    Polygonal kinds carry an exact rational boundary (area exactly 1); the
    disk radius is the closest multiple of 2**-32 to pi**-1/2, putting its
    area within 2**-30 of 1.
    """
    kind: str
    name: str
    polygon: Optional[ConvexPolygon] = None
    disk_radius: Optional[Fraction] = None

    @staticmethod
    def unit_square() -> "RegionSpec":
        h = Fraction(1, 2)
        poly = ConvexPolygon((
            RationalPoint(-h, -h), RationalPoint(h, -h),
            RationalPoint(h, h), RationalPoint(-h, h),
        ))
        return RegionSpec("unit_square_centered", "square", polygon=poly)

    @staticmethod
    def triangle() -> "RegionSpec":
        verts = tuple(RationalPoint(Fraction(x, DEFAULT_SCALE), Fraction(y, DEFAULT_SCALE))
                      for x, y in _TRIANGLE_GRID)
        poly = ConvexPolygon(verts)
        return RegionSpec("triangle", "triangle", polygon=poly)

    @staticmethod
    def disk() -> "RegionSpec":
        return RegionSpec("disk", "disk", disk_radius=Fraction(_DISK_R_NUM, _DISK_R_DEN))

    @staticmethod
    def convex_polygon(vertices: Sequence[RationalPoint], name: str = "polygon") -> "RegionSpec":
        poly = ConvexPolygon(tuple(vertices))
        return RegionSpec("convex_polygon", name, polygon=poly)

    def __post_init__(self):
        if self.kind in ("unit_square_centered", "triangle", "convex_polygon"):
            if self.polygon is None or self.polygon.degenerate:
                raise SamplingError(f"{self.kind} region needs a convex polygon boundary")
            if self.polygon.area() != 1:
                raise SamplingError("polygonal regions must have area exactly 1")
        elif self.kind == "disk":
            if self.disk_radius is None:
                raise SamplingError("disk region needs a radius")
            r = float(self.disk_radius)
            if abs(math.pi * r * r - 1.0) > 2 ** -30:
                raise SamplingError("disk area must be within 2**-30 of 1")
        else:
            raise SamplingError(f"unknown region kind {self.kind!r}")

    def boundary_polygon(self) -> ConvexPolygon:
        if self.polygon is None:
            raise GeometryError("disk region has no polygonal boundary")
        return self.polygon

    def contains_grid(self, x: int, y: int, scale: int = DEFAULT_SCALE) -> bool:
        """Exact closed containment of a grid point."""
        if self.kind == "disk":
            num = self.disk_radius.numerator
            den = self.disk_radius.denominator
            # (x/scale)^2 + (y/scale)^2 <= (num/den)^2, in exact integers
            return (x * den) ** 2 + (y * den) ** 2 <= (num * scale) ** 2
        p = RationalPoint(Fraction(x, scale), Fraction(y, scale))
        vs = self.polygon.vertices
        return all(orient(vs[i], vs[(i + 1) % len(vs)], p) >= 0 for i in range(len(vs)))

    def to_json(self) -> dict:
        d = {"kind": self.kind, "name": self.name}
        if self.polygon is not None:
            d["vertices"] = [[str(v.x), str(v.y)] for v in self.polygon.vertices]
        if self.disk_radius is not None:
            d["radius"] = str(self.disk_radius)
        return d

    @staticmethod
    def from_json(d: dict) -> "RegionSpec":
        kind = d.get("kind", d.get("name"))
        alias = {"square": "unit_square_centered"}
        kind = alias.get(kind, kind)
        if kind == "unit_square_centered":
            return RegionSpec.unit_square()
        if kind == "triangle":
            return RegionSpec.triangle()
        if kind == "disk":
            return RegionSpec.disk()
        if kind == "convex_polygon":
            verts = tuple(RationalPoint(Fraction(a), Fraction(b)) for a, b in d["vertices"])
            return RegionSpec.convex_polygon(verts, name=d.get("name", "polygon"))
        raise SamplingError(f"unknown region {d!r}")

    @staticmethod
    def by_name(name: str) -> "RegionSpec":
        table = {
            "square": RegionSpec.unit_square,
            "unit_square_centered": RegionSpec.unit_square,
            "triangle": RegionSpec.triangle,
            "disk": RegionSpec.disk,
        }
        if name not in table:
            raise SamplingError(f"unknown region name {name!r}")
        return table[name]()

    def _kernel_args(self):
        """(kind_code, int64 params, float64 fan weights) for the jitted sampler."""
        if self.kind == "unit_square_centered":
            return _KIND_SQUARE, np.zeros(1, np.int64), np.ones(1, np.float64)
        if self.kind == "triangle":
            flat = np.array([c for v in _TRIANGLE_GRID for c in v], np.int64)
            return _KIND_TRIANGLE, flat, np.ones(1, np.float64)
        if self.kind == "disk":
            return _KIND_DISK, np.array([_DISK_R_NUM], np.int64), np.ones(1, np.float64)
        verts = self.polygon.vertices
        grid = []
        for v in verts:
            gx = v.x * DEFAULT_SCALE
            gy = v.y * DEFAULT_SCALE
            if gx.denominator != 1 or gy.denominator != 1:
                raise SamplingError("polygon region vertices must be grid-exact for sampling")
            gx, gy = int(gx), int(gy)
            if abs(gx) >= DEFAULT_SCALE or abs(gy) >= DEFAULT_SCALE:
                raise SamplingError("polygon region vertices must lie within the unit box")
            grid.extend((gx, gy))
        flat = np.array(grid, np.int64)
        # cumulative fan-triangle weights (selection rule only; exactness not needed)
        areas = []
        v0 = verts[0]
        for i in range(1, len(verts) - 1):
            a = (verts[i].x - v0.x) * (verts[i + 1].y - v0.y) - (verts[i].y - v0.y) * (verts[i + 1].x - v0.x)
            areas.append(float(a) / 2.0)
        cum = np.cumsum(np.array(areas, np.float64))
        cum /= cum[-1]
        return _KIND_POLYGON, flat, cum


@dataclass(frozen=True)
class PointSet:
    """Ordered distinct grid points plus the sampling context."""
    xs: np.ndarray
    ys: np.ndarray
    scale: int = DEFAULT_SCALE
    region: Optional[RegionSpec] = None

    def __post_init__(self):
        xs = np.ascontiguousarray(self.xs, dtype=np.int64)
        ys = np.ascontiguousarray(self.ys, dtype=np.int64)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise SamplingError("xs and ys must be matching 1-d arrays")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if self.scale <= 0:
            raise SamplingError("scale must be a positive integer")
        if len(xs) > 1:
            order = np.lexsort((ys, xs))
            sx, sy = xs[order], ys[order]
            dup = (sx[1:] == sx[:-1]) & (sy[1:] == sy[:-1])
            if dup.any():
                raise SamplingError("duplicate points in PointSet")

    def __len__(self) -> int:
        return len(self.xs)

    def point(self, i: int) -> Point:
        return Point(int(self.xs[i]), int(self.ys[i]))

    @property
    def points(self) -> list[Point]:
        return [Point(int(x), int(y)) for x, y in zip(self.xs, self.ys)]


@njit(cache=True, nogil=True)
def _sample_kernel(kind, iparams, cumw, n, master, trial, xs, ys):
    """Fill xs/ys with n grid points; returns draws consumed.

    Each attempt consumes exactly two counter positions.  After the initial
    fill, points on an already used x-column are resampled (smallest point
    index keeps the column) until all columns are distinct.
    """
    draw = np.uint64(0)
    two = np.uint64(2)

    for slot in range(n):
        while True:
            gx, gy, ok = _attempt(kind, iparams, cumw, master, trial, draw)
            draw += two
            if ok:
                xs[slot] = gx
                ys[slot] = gy
                break

    if n <= 1:
        return draw

    mark = np.empty(n, np.uint8)
    while True:
        order = np.argsort(xs[:n], kind="mergesort")
        for i in range(n):
            mark[i] = 0
        ndup = 0
        i = 0
        while i < n:
            j = i + 1
            while j < n and xs[order[j]] == xs[order[i]]:
                j += 1
            if j - i > 1:
                keep = order[i]
                for k in range(i + 1, j):
                    if order[k] < keep:
                        keep = order[k]
                for k in range(i, j):
                    if order[k] != keep:
                        mark[order[k]] = 1
                        ndup += 1
            i = j
        if ndup == 0:
            break
        for slot in range(n):
            if mark[slot] == 1:
                while True:
                    gx, gy, ok = _attempt(kind, iparams, cumw, master, trial, draw)
                    draw += two
                    if ok:
                        xs[slot] = gx
                        ys[slot] = gy
                        break
    return draw


@njit(cache=True, nogil=True, inline="always")
def _attempt(kind, iparams, cumw, master, trial, draw):
    """One sampling attempt: (grid_x, grid_y, accepted)."""
    a, b = _draw_u64_pair(master, trial, draw)
    if kind == 0:
        gx = np.int64(a & _MASK30) - _HALF_GRID
        gy = np.int64(b & _MASK30) - _HALF_GRID
        return gx, gy, True
    if kind == 1:
        u = _u64_to_unit(a)
        v = _u64_to_unit(b)
        if u + v > 1.0:
            u = 1.0 - u
            v = 1.0 - v
        px = -1.0 + 2.0 * u + v
        py = -0.5 + v
        gx = np.int64(np.floor(px * DEFAULT_SCALE))
        gy = np.int64(np.floor(py * DEFAULT_SCALE))
        ok = _inside_grid_poly(iparams, gx, gy)
        return gx, gy, ok
    if kind == 2:
        rnum = iparams[0]
        r = rnum / 4294967296.0
        px = (2.0 * _u64_to_unit(a) - 1.0) * r
        py = (2.0 * _u64_to_unit(b) - 1.0) * r
        gx = np.int64(np.floor(px * DEFAULT_SCALE))
        gy = np.int64(np.floor(py * DEFAULT_SCALE))
        # exact closed test: (4|gx|)^2 + (4|gy|)^2 <= rnum^2 (radius denominator 2**32)
        ax = np.uint64(abs(np.int64(4) * gx))
        ay = np.uint64(abs(np.int64(4) * gy))
        rr = np.uint64(rnum)
        ok = ax * ax + ay * ay <= rr * rr
        return gx, gy, ok
    # convex polygon: fan-triangle selection, then triangle sampling
    a2, b2 = _draw_u64_pair(master, trial, draw + np.uint64(1))
    t = _u64_to_unit(a)
    tri = 0
    while tri < cumw.shape[0] - 1 and t >= cumw[tri]:
        tri += 1
    x0 = iparams[0]
    y0 = iparams[1]
    x1 = iparams[2 * (tri + 1)]
    y1 = iparams[2 * (tri + 1) + 1]
    x2 = iparams[2 * (tri + 2)]
    y2 = iparams[2 * (tri + 2) + 1]
    u = _u64_to_unit(a2)
    v = _u64_to_unit(b2)
    if u + v > 1.0:
        u = 1.0 - u
        v = 1.0 - v
    px = x0 + u * (x1 - x0) + v * (x2 - x0)
    py = y0 + u * (y1 - y0) + v * (y2 - y0)
    gx = np.int64(np.floor(px))
    gy = np.int64(np.floor(py))
    ok = _inside_grid_poly(iparams, gx, gy)
    return gx, gy, ok


@njit(cache=True, nogil=True, inline="always")
def _inside_grid_poly(flat, gx, gy):
    """Exact closed containment in a CCW grid polygon (int64-safe by bounds)."""
    m = flat.shape[0] // 2
    for i in range(m):
        ax = flat[2 * i]
        ay = flat[2 * i + 1]
        bx = flat[2 * ((i + 1) % m)]
        by = flat[2 * ((i + 1) % m) + 1]
        if (bx - ax) * (gy - ay) - (by - ay) * (gx - ax) < 0:
            return False
    return True


def sample_uniform(region: RegionSpec, n: int, seed, trial: int = 0) -> PointSet:
    """n uniform points over `region`, snapped to the grid, distinct x-columns.

    `seed` is a SeedSpec or a bare master seed.  Identical (seed, trial)
    always yields the identical point set, independent of execution order.
    """
    master = seed.master_seed if isinstance(seed, SeedSpec) else int(seed)
    if not (0 <= master < 2 ** 64):
        raise SamplingError("master seed must be an unsigned 64-bit integer")
    if n < 0:
        raise SamplingError("n must be nonnegative")
    if trial < 0 or trial >= 2 ** 64:
        raise SamplingError("trial index out of range")
    if n > 2 ** 24:
        raise SamplingError("n exceeds the sampler's grid-capacity budget")
    xs = np.empty(n, np.int64)
    ys = np.empty(n, np.int64)
    if n > 0:
        kind, iparams, cumw = region._kernel_args()
        _sample_kernel(kind, iparams, cumw, n, np.uint64(master), np.uint64(trial), xs, ys)
    return PointSet(xs, ys, DEFAULT_SCALE, region)


def strip_partition(ps: PointSet, t: int) -> list[tuple[list[Point], ConvexPolygon]]:
    """Split ps by x into consecutive groups of exactly t points.

    Separating abscissae sit at midpoints between the x-coordinates flanking
    each group boundary, so the vertical lines avoid every point; the outer
    strips extend to the region boundary.  Only square-region point sets are
    supported (the strips are vertical rectangles of the unit square).
    """
    n = len(ps)
    if t <= 0:
        raise SamplingError("t must be positive")
    if n == 0 or n % t != 0:
        raise SamplingError("t must divide the number of points")
    if ps.region is not None and ps.region.kind != "unit_square_centered":
        raise SamplingError("strip_partition is defined over the unit square")
    order = np.argsort(ps.xs, kind="mergesort")
    sx = ps.xs[order]
    if n > 1 and (sx[1:] == sx[:-1]).any():
        raise SamplingError("strip_partition needs pairwise distinct x-coordinates")
    k = n // t
    half = Fraction(1, 2)
    bounds = [Fraction(-1, 2)]
    for g in range(1, k):
        left = int(sx[g * t - 1])
        right = int(sx[g * t])
        bounds.append(Fraction(left + right, 2 * ps.scale))
    bounds.append(half)
    out = []
    for g in range(k):
        lo, hi = bounds[g], bounds[g + 1]
        strip = ConvexPolygon((
            RationalPoint(lo, -half), RationalPoint(hi, -half),
            RationalPoint(hi, half), RationalPoint(lo, half),
        ))
        members = [Point(int(ps.xs[i]), int(ps.ys[i])) for i in order[g * t:(g + 1) * t]]
        out.append((members, strip))
    return out
