"""Largest convex hole (empty convex polygon) search.

`largest_hole_dp` maximizes the vertex count of an empty convex polygon over
all subsets of the input, in O(n^3) total time and O(n^2) memory: every hole
is rooted at its lexicographically smallest vertex (the apex); the remaining
vertices form a convex chain in angular order around the apex, and a polygon
listed in strictly increasing angular order with strictly-left inner turns is
automatically simple and strictly convex.

Two facts keep the per-apex work quadratic, both decided by exact integer
orientation tests:

  * fan-triangle emptiness: with wedge points sorted by angle around the
    apex, triangle (apex, c_i, c_j) is empty iff the direction c_j - c_i
    attains the running angular maximum over everything scanned between i
    and j, so one forward sweep per i classifies all pairs;

  * chain transitions: among empty pairs, the in-neighbors of a vertex are
    already direction-sorted when listed by angle around the apex (a point
    breaking that order would sit inside an allegedly empty triangle), so
    the best predecessor for every outgoing edge is one two-pointer pass.

Every cross product evaluated by the jitted kernels is a product of
coordinate differences; callers guard 2*span_x*span_y < 2**63 and fall back
to pure-Python big-integer twins of the same algorithms otherwise.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numba import njit

from .geometry import Point, convex_hull, is_convex_position
from .sampler import PointSet


class HoleSearchError(ValueError):
    pass


class TooLargeForOracle(HoleSearchError):
    pass


@dataclass(frozen=True)
class HoleResult:
    """Vertex count and witness of a largest convex hole."""
    size: int
    vertices: tuple[Point, ...]
    method: str
    flags: tuple[str, ...] = ()


_I64_SAFE = 2 ** 63 - 1


def _as_arrays(ps: Union[PointSet, Sequence[Point]]):
    if isinstance(ps, PointSet):
        return np.asarray(ps.xs, np.int64), np.asarray(ps.ys, np.int64)
    xs = np.array([p.x for p in ps], np.int64)
    ys = np.array([p.y for p in ps], np.int64)
    return xs, ys


def _lex_sorted(ps):
    xs, ys = _as_arrays(ps)
    order = np.lexsort((ys, xs))
    sx = np.ascontiguousarray(xs[order])
    sy = np.ascontiguousarray(ys[order])
    if len(sx) > 1 and ((sx[1:] == sx[:-1]) & (sy[1:] == sy[:-1])).any():
        raise HoleSearchError("duplicate points are not allowed")
    return sx, sy


def _spans_fit_i64(sx, sy) -> bool:
    if len(sx) == 0:
        return True
    span_x = int(sx[-1]) - int(sx[0])
    span_y = int(sy.max()) - int(sy.min())
    return 2 * max(span_x, 1) * max(span_y, 1) <= _I64_SAFE


@njit(cache=True, nogil=True, inline="always")
def _angle_less(ax, ay, bx, by):
    # wedge vectors satisfy x > 0, or x == 0 and y > 0; vertical is maximal
    if ax == 0:
        if bx == 0:
            return ay < by
        return False
    if bx == 0:
        return True
    cr = ax * by - ay * bx
    if cr != 0:
        return cr > 0
    return ax < bx  # same ray, nearer first


@njit(cache=True, nogil=True)
def _sort_wedge(ux, uy, idx, tmp, m):
    """Bottom-up mergesort of idx[0:m] by the exact angular comparator."""
    width = 1
    while width < m:
        lo = 0
        while lo < m:
            mid = lo + width
            if mid >= m:
                break
            hi = mid + width
            if hi > m:
                hi = m
            a, b, k = lo, mid, lo
            while a < mid and b < hi:
                ia, ib = idx[a], idx[b]
                if _angle_less(ux[ib], uy[ib], ux[ia], uy[ia]):
                    tmp[k] = ib
                    b += 1
                else:
                    tmp[k] = ia
                    a += 1
                k += 1
            while a < mid:
                tmp[k] = idx[a]
                a += 1
                k += 1
            while b < hi:
                tmp[k] = idx[b]
                b += 1
                k += 1
            for t in range(lo, hi):
                idx[t] = tmp[t]
            lo += 2 * width
        width *= 2


@njit(cache=True, nogil=True, inline="always")
def _grown(arr, ncap, used):
    out = np.empty(ncap, np.int64)
    out[:used] = arr[:used]
    return out


@njit(cache=True, nogil=True)
def _lecp_kernel(xs, ys):
    """Largest-hole DP over lex-sorted distinct points.

    Returns (size, witness_indices, witness_len); the witness holds indices
    into the sorted arrays, apex first, chain CCW.  size == 2 means no hole
    exists (all points collinear).
    """
    n = xs.shape[0]
    best = 2
    best_wit = np.empty(n + 2, np.int64)
    best_len = 0

    ux = np.empty(n, np.int64)
    uy = np.empty(n, np.int64)
    slot_idx = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    wx = np.empty(n, np.int64)     # wedge coords relative to apex, angle-sorted
    wy = np.empty(n, np.int64)
    gidx = np.empty(n, np.int64)   # wedge slot -> global index
    class_end = np.empty(n, np.int64)
    cand_id = np.empty(n, np.int64)
    cand_slot = np.empty(n, np.int64)

    cap = 8 * n + 64
    e_src = np.empty(cap, np.int64)
    e_dst = np.empty(cap, np.int64)
    e_dp = np.empty(cap, np.int64)
    e_par = np.empty(cap, np.int64)
    in_edge = np.empty(cap, np.int64)
    out_start = np.empty(n + 1, np.int64)
    in_start = np.empty(n + 2, np.int64)
    in_fill = np.empty(n + 1, np.int64)
    chain = np.empty(n + 2, np.int64)

    for r in range(n - 2):
        m_wedge = n - 1 - r
        if m_wedge + 1 <= best:
            break
        px = xs[r]
        py = ys[r]

        for s in range(m_wedge):
            g = r + 1 + s
            ux[s] = xs[g] - px
            uy[s] = ys[g] - py
            slot_idx[s] = s
        _sort_wedge(ux, uy, slot_idx, tmp, m_wedge)
        for s in range(m_wedge):
            j = slot_idx[s]
            wx[s] = ux[j]
            wy[s] = uy[j]
            gidx[s] = r + 1 + j

        # ray classes (equal-angle runs); the nearest of each ray is the
        # candidate chain vertex, the rest only act as blockers
        has_dups = False
        s = 0
        ncand = 0
        while s < m_wedge:
            e = s + 1
            if wx[s] == 0:
                while e < m_wedge and wx[e] == 0:
                    e += 1
            else:
                while e < m_wedge and wx[e] != 0 and wx[s] * wy[e] - wy[s] * wx[e] == 0:
                    e += 1
            if e - s > 1:
                has_dups = True
            cand_id[s] = ncand
            cand_slot[ncand] = s
            ncand += 1
            for q in range(s + 1, e):
                cand_id[q] = -1
            for q in range(s, e):
                class_end[q] = e
            s = e

        if ncand < 2:
            continue

        # emptiness sweep: out-edges per candidate, (i asc, j asc) order;
        # capacity is reserved per row so the hot loop never reallocates
        ecount = 0
        for ci in range(ncand):
            out_start[ci] = ecount
            si = cand_slot[ci]
            xi = wx[si]
            yi = wy[si]
            start = class_end[si]
            if start >= m_wedge:
                continue
            need = ecount + (m_wedge - start)
            if need > cap:
                ncap = cap * 2
                if ncap < need:
                    ncap = need
                e_src = _grown(e_src, ncap, ecount)
                e_dst = _grown(e_dst, ncap, ecount)
                e_dp = np.empty(ncap, np.int64)
                e_par = np.empty(ncap, np.int64)
                in_edge = np.empty(ncap, np.int64)
                cap = ncap
            if not has_dups:
                q = start
                vsx = wx[q] - xi
                vsy = wy[q] - yi
                e_src[ecount] = ci
                e_dst[ecount] = q
                ecount += 1
                for q in range(start + 1, m_wedge):
                    dx = wx[q] - xi
                    dy = wy[q] - yi
                    cr = vsx * dy - vsy * dx
                    if cr >= 0:
                        e_src[ecount] = ci
                        e_dst[ecount] = q
                        ecount += 1
                        if cr > 0:
                            vsx = dx
                            vsy = dy
            else:
                vsx = np.int64(0)
                vsy = np.int64(0)
                have = False
                q = start
                while q < m_wedge:
                    ce = class_end[q]
                    for t in range(q, ce):
                        if cand_id[t] >= 0:
                            dx = wx[t] - xi
                            dy = wy[t] - yi
                            if (not have) or vsx * dy - vsy * dx >= 0:
                                e_src[ecount] = ci
                                e_dst[ecount] = cand_id[t]
                                ecount += 1
                    for t in range(q, ce):
                        dx = wx[t] - xi
                        dy = wy[t] - yi
                        if not have:
                            vsx = dx
                            vsy = dy
                            have = True
                        elif vsx * dy - vsy * dx > 0:
                            vsx = dx
                            vsy = dy
                    q = ce
        out_start[ncand] = ecount

        if ecount == 0:
            continue

        # in the fast path e_dst stores wedge slots == candidate ids
        # transpose: in-edges per destination, sources ascending
        for v in range(ncand + 1):
            in_start[v] = 0
        for e in range(ecount):
            in_start[e_dst[e] + 1] += 1
        for v in range(ncand):
            in_start[v + 1] += in_start[v]
        for v in range(ncand):
            in_fill[v] = 0
        for e in range(ecount):
            d = e_dst[e]
            in_edge[in_start[d] + in_fill[d]] = e
            in_fill[d] += 1

        # chain DP in ascending angle; every dp value is a valid hole size
        for v in range(ncand):
            o_lo = out_start[v]
            o_hi = out_start[v + 1]
            if o_lo == o_hi:
                continue
            sv = cand_slot[v]
            vx = wx[sv]
            vy = wy[sv]
            ptr = in_start[v]
            i_hi = in_start[v + 1]
            runmax = -1
            runarg = -1
            for f in range(o_lo, o_hi):
                sj = cand_slot[e_dst[f]]
                ox = wx[sj] - vx
                oy = wy[sj] - vy
                while ptr < i_hi:
                    e = in_edge[ptr]
                    si = cand_slot[e_src[e]]
                    if (vx - wx[si]) * oy - (vy - wy[si]) * ox > 0:
                        if e_dp[e] > runmax:
                            runmax = e_dp[e]
                            runarg = e
                        ptr += 1
                    else:
                        break
                if runmax >= 3:
                    dp = runmax + 1
                    e_dp[f] = dp
                    e_par[f] = runarg
                else:
                    dp = 3
                    e_dp[f] = dp
                    e_par[f] = -1
                if dp > best:
                    best = dp
                    k = 0
                    chain[k] = gidx[sj]
                    k += 1
                    chain[k] = gidx[sv]
                    k += 1
                    e = e_par[f]
                    while e >= 0:
                        chain[k] = gidx[cand_slot[e_src[e]]]
                        k += 1
                        e = e_par[e]
                    chain[k] = r
                    k += 1
                    for t in range(k):
                        best_wit[t] = chain[k - 1 - t]
                    best_len = k

    return best, best_wit, best_len


def _lecp_python(xs, ys):
    """Pure-Python big-integer twin of _lecp_kernel (no overflow limits)."""
    n = len(xs)
    best = 2
    best_wit: list[int] = []

    for r in range(n - 2):
        if (n - 1 - r) + 1 <= best:
            break
        px, py = xs[r], ys[r]
        wedge = list(range(r + 1, n))

        def less(a, b):
            ax, ay = xs[a] - px, ys[a] - py
            bx, by = xs[b] - px, ys[b] - py
            if ax == 0:
                return (ay < by) if bx == 0 else False
            if bx == 0:
                return True
            cr = ax * by - ay * bx
            if cr != 0:
                return cr > 0
            return ax < bx

        wedge.sort(key=functools.cmp_to_key(
            lambda a, b: -1 if less(a, b) else (1 if less(b, a) else 0)))
        M = len(wedge)
        wxl = [xs[g] - px for g in wedge]
        wyl = [ys[g] - py for g in wedge]

        class_end = [0] * M
        cand_id = [-1] * M
        cand_slots: list[int] = []
        s = 0
        while s < M:
            e = s + 1
            while e < M:
                same = (wxl[s] == 0 and wxl[e] == 0) or (
                    wxl[s] != 0 and wxl[e] != 0
                    and wxl[s] * wyl[e] - wyl[s] * wxl[e] == 0)
                if not same:
                    break
                e += 1
            cand_id[s] = len(cand_slots)
            cand_slots.append(s)
            for q in range(s, e):
                class_end[q] = e
            s = e
        m = len(cand_slots)
        if m < 2:
            continue

        out_edges: list[list[int]] = [[] for _ in range(m)]
        for ci, si in enumerate(cand_slots):
            xi, yi = wxl[si], wyl[si]
            have = False
            vsx = vsy = 0
            q = class_end[si]
            while q < M:
                ce = class_end[q]
                for t in range(q, ce):
                    if cand_id[t] >= 0:
                        dx, dy = wxl[t] - xi, wyl[t] - yi
                        if not have or vsx * dy - vsy * dx >= 0:
                            out_edges[ci].append(cand_id[t])
                for t in range(q, ce):
                    dx, dy = wxl[t] - xi, wyl[t] - yi
                    if not have:
                        vsx, vsy, have = dx, dy, True
                    elif vsx * dy - vsy * dx > 0:
                        vsx, vsy = dx, dy
                q = ce

        in_edges: list[list[tuple[int, int]]] = [[] for _ in range(m)]
        for v in range(m):
            for pos, j in enumerate(out_edges[v]):
                in_edges[j].append((v, pos))

        dp: dict[tuple[int, int], int] = {}
        par: dict[tuple[int, int], tuple[int, int] | None] = {}
        for v in range(m):
            sv = cand_slots[v]
            vx, vy = wxl[sv], wyl[sv]
            ins = in_edges[v]
            ptr = 0
            runmax, runarg = -1, None
            for pos, j in enumerate(out_edges[v]):
                sj = cand_slots[j]
                ox, oy = wxl[sj] - vx, wyl[sj] - vy
                while ptr < len(ins):
                    i, ipos = ins[ptr]
                    si = cand_slots[i]
                    if (vx - wxl[si]) * oy - (vy - wyl[si]) * ox > 0:
                        d = dp[(i, ipos)]
                        if d > runmax:
                            runmax, runarg = d, (i, ipos)
                        ptr += 1
                    else:
                        break
                if runmax >= 3:
                    dp[(v, pos)] = runmax + 1
                    par[(v, pos)] = runarg
                else:
                    dp[(v, pos)] = 3
                    par[(v, pos)] = None
                if dp[(v, pos)] > best:
                    best = dp[(v, pos)]
                    seq = [wedge[sj], wedge[sv]]
                    cur = par[(v, pos)]
                    while cur is not None:
                        seq.append(wedge[cand_slots[cur[0]]])
                        cur = par[cur]
                    seq.append(r)
                    best_wit = seq[::-1]

    return best, best_wit


def _verify_witness(xs, ys, wit, method):
    """Exact check: witness in strict convex position, hull strictly empty."""
    pts = [Point(int(xs[i]), int(ys[i])) for i in wit]
    if not is_convex_position(pts):
        raise HoleSearchError(f"{method} produced a non-convex witness (internal bug)")
    k = len(wit)
    inside = np.ones(len(xs), bool)
    for i in range(k):
        a, b = wit[i], wit[(i + 1) % k]
        ax, ay = int(xs[a]), int(ys[a])
        bx, by = int(xs[b]), int(ys[b])
        inside &= ((bx - ax) * (ys - ay) - (by - ay) * (xs - ax)) > 0
    if inside.any():
        raise HoleSearchError(f"{method} witness is not empty (internal bug)")


def largest_hole_dp(ps: Union[PointSet, Sequence[Point]]) -> HoleResult:
    """Vertex count and witness of a largest convex hole, by dynamic program.

    Needs at least 3 distinct points.  An all-collinear input returns a
    size-2 sentinel flagged "all_collinear".  The returned witness is always
    re-verified exactly: strict convex position and an empty interior.
    """
    sx, sy = _lex_sorted(ps)
    n = len(sx)
    if n < 3:
        raise HoleSearchError("largest_hole_dp needs at least 3 points")

    if _spans_fit_i64(sx, sy):
        size, wit_arr, wlen = _lecp_kernel(sx, sy)
        wit = [int(wit_arr[i]) for i in range(wlen)]
    else:
        size, wit = _lecp_python([int(v) for v in sx], [int(v) for v in sy])

    if size < 3:
        lo = Point(int(sx[0]), int(sy[0]))
        hi = Point(int(sx[-1]), int(sy[-1]))
        return HoleResult(2, (lo, hi), "dp", flags=("all_collinear",))

    _verify_witness(sx, sy, wit, "dp")
    verts = tuple(Point(int(sx[i]), int(sy[i])) for i in wit)
    return HoleResult(size, verts, "dp")


@njit(cache=True, nogil=True, inline="always")
def _popcount(v):
    c = 0
    while v:
        v &= v - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def _subset_hull_empty(xs, ys, n, mask, lower, upper, cyc):
    """(is_convex_position, is_empty) for the masked subset.

    Points are lex-sorted, so ascending masked indices feed the monotone
    chain directly.  Strict turns only: collinear subsets are rejected.
    """
    k = 0
    lo = 0
    hi = 0
    for i in range(n):
        if (mask >> i) & 1:
            while lo >= 2 and ((xs[lower[lo - 1]] - xs[lower[lo - 2]]) * (ys[i] - ys[lower[lo - 2]])
                               - (ys[lower[lo - 1]] - ys[lower[lo - 2]]) * (xs[i] - xs[lower[lo - 2]])) <= 0:
                lo -= 1
            lower[lo] = i
            lo += 1
            k += 1
    for i in range(n - 1, -1, -1):
        if (mask >> i) & 1:
            while hi >= 2 and ((xs[upper[hi - 1]] - xs[upper[hi - 2]]) * (ys[i] - ys[upper[hi - 2]])
                               - (ys[upper[hi - 1]] - ys[upper[hi - 2]]) * (xs[i] - xs[upper[hi - 2]])) <= 0:
                hi -= 1
            upper[hi] = i
            hi += 1
    if lo - 1 + hi - 1 != k:
        return False, False
    for t in range(lo - 1):
        cyc[t] = lower[t]
    for t in range(hi - 1):
        cyc[lo - 1 + t] = upper[t]
    for p in range(n):
        if (mask >> p) & 1:
            continue
        inside = True
        for t in range(k):
            a = cyc[t]
            b = cyc[(t + 1) % k]
            if (xs[b] - xs[a]) * (ys[p] - ys[a]) - (ys[b] - ys[a]) * (xs[p] - xs[a]) <= 0:
                inside = False
                break
        if inside:
            return True, False
    return True, True


@njit(cache=True, nogil=True)
def _mask_lex_less(a, b):
    """Compare bitmasks as ascending index tuples, lexicographically."""
    while a != 0 and b != 0:
        pa = a & (-a)
        pb = b & (-b)
        if pa != pb:
            return pa < pb
        a ^= pa
        b ^= pb
    return a == 0 and b != 0


@njit(cache=True, nogil=True)
def _brute_kernel(xs, ys):
    """Exhaustive largest-hole search over all subsets (n <= 20)."""
    n = xs.shape[0]
    lower = np.empty(n + 2, np.int64)
    upper = np.empty(n + 2, np.int64)
    cyc = np.empty(n + 2, np.int64)
    best_k = 2
    best_mask = np.int64(0)
    for mask in range(7, 1 << n):
        k = _popcount(mask)
        if k < 3 or k < best_k:
            continue
        convex, empty = _subset_hull_empty(xs, ys, n, mask, lower, upper, cyc)
        if not (convex and empty):
            continue
        if k > best_k or (k == best_k and _mask_lex_less(np.int64(mask), best_mask)):
            best_k = k
            best_mask = np.int64(mask)
    return best_k, best_mask


def _brute_python(xs, ys):
    """Big-integer fallback of the exhaustive oracle (overflow-free)."""
    n = len(xs)
    pts = list(zip(xs, ys))
    best_k, best_sub = 2, None
    for size in range(3, n + 1):
        for sub in itertools.combinations(range(n), size):
            sel = [pts[i] for i in sub]
            if not _convex_position_tuples(sel):
                continue
            if not _empty_tuples(pts, sub, sel):
                continue
            if size > best_k:
                best_k, best_sub = size, sub
            elif size == best_k and best_sub is not None and sub < best_sub:
                best_sub = sub
    return best_k, best_sub


def _convex_position_tuples(sel):
    edges = 0
    k = len(sel)
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            ok = True
            for c in range(k):
                if c == a or c == b:
                    continue
                cr = ((sel[b][0] - sel[a][0]) * (sel[c][1] - sel[a][1])
                      - (sel[b][1] - sel[a][1]) * (sel[c][0] - sel[a][0]))
                if cr <= 0:
                    ok = False
                    break
            if ok:
                edges += 1
    return edges == k


def _empty_tuples(pts, sub, sel):
    subset = set(sub)
    k = len(sel)
    hull_edges = []
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            if all(((sel[b][0] - sel[a][0]) * (sel[c][1] - sel[a][1])
                    - (sel[b][1] - sel[a][1]) * (sel[c][0] - sel[a][0])) > 0
                   for c in range(k) if c not in (a, b)):
                hull_edges.append((sel[a], sel[b]))
    for i, p in enumerate(pts):
        if i in subset:
            continue
        if all(((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) > 0
               for a, b in hull_edges):
            return False
    return True


def largest_hole_bruteforce(ps: Union[PointSet, Sequence[Point]]) -> HoleResult:
    """Oracle: enumerate every subset, keep a maximum empty convex one.

    Ties break to the lexicographically smallest vertex list.  Capped at 20
    points."""
    sx, sy = _lex_sorted(ps)
    n = len(sx)
    if n > 20:
        raise TooLargeForOracle("brute-force oracle is capped at 20 points")
    if n < 3:
        raise HoleSearchError("largest_hole_bruteforce needs at least 3 points")

    if _spans_fit_i64(sx, sy):
        size, mask = _brute_kernel(sx, sy)
        wit = [i for i in range(n) if (int(mask) >> i) & 1]
    else:
        size, sub = _brute_python([int(v) for v in sx], [int(v) for v in sy])
        wit = list(sub) if sub else []

    if size < 3 or not wit:
        lo = Point(int(sx[0]), int(sy[0]))
        hi = Point(int(sx[-1]), int(sy[-1]))
        return HoleResult(2, (lo, hi), "brute_force", flags=("all_collinear",))

    _verify_witness(sx, sy, wit, "brute_force")
    pts = [Point(int(sx[i]), int(sy[i])) for i in wit]
    hull = convex_hull(pts, scale=1)
    start = min(range(len(hull.vertices)), key=lambda i: hull.vertices[i].key())
    cyc = [hull.vertices[(start + t) % len(hull.vertices)] for t in range(len(hull.vertices))]
    verts = tuple(Point(int(v.x), int(v.y)) for v in cyc)
    return HoleResult(size, verts, "brute_force")


@njit(cache=True, nogil=True)
def _count_holes_lex(xs, ys, n, s):
    """Count empty convex s-subsets by lexicographic combination rolling."""
    idx = np.empty(s, np.int64)
    for i in range(s):
        idx[i] = i
    lower = np.empty(s + 2, np.int64)
    upper = np.empty(s + 2, np.int64)
    cyc = np.empty(s + 2, np.int64)
    count = 0
    while True:
        mask = 0
        for i in range(s):
            mask |= 1 << idx[i]
        convex, empty = _subset_hull_empty(xs, ys, n, mask, lower, upper, cyc)
        if convex and empty:
            count += 1
        t = s - 1
        while t >= 0 and idx[t] == n - s + t:
            t -= 1
        if t < 0:
            break
        idx[t] += 1
        for q in range(t + 1, s):
            idx[q] = idx[q - 1] + 1
    return count


@njit(cache=True, nogil=True)
def _count_holes_gosper(xs, ys, n, s):
    """Second census enumerator: Gosper mask order, pairwise-edge convexity.

    Convex position is decided by counting directed pairs (a, b) whose other
    subset members all lie strictly left: exactly s such pairs iff every
    member is a strict hull vertex.  Those pairs are the hull edges, reused
    for the emptiness test.  No sorting, no scaled centroids.
    """
    sel = np.empty(s, np.int64)
    ea = np.empty(s + 1, np.int64)
    eb = np.empty(s + 1, np.int64)
    count = 0
    mask = (1 << s) - 1
    top = 1 << n
    while mask < top:
        k = 0
        for i in range(n):
            if (mask >> i) & 1:
                sel[k] = i
                k += 1
        nedges = 0
        ok = True
        for a in range(s):
            ia = sel[a]
            for b in range(s):
                if a == b:
                    continue
                ib = sel[b]
                good = True
                for c in range(s):
                    if c == a or c == b:
                        continue
                    ic = sel[c]
                    if ((xs[ib] - xs[ia]) * (ys[ic] - ys[ia])
                            - (ys[ib] - ys[ia]) * (xs[ic] - xs[ia])) <= 0:
                        good = False
                        break
                if good:
                    if nedges > s:
                        ok = False
                        break
                    ea[nedges] = ia
                    eb[nedges] = ib
                    nedges += 1
            if not ok:
                break
        if ok and nedges == s:
            for p in range(n):
                if (mask >> p) & 1:
                    continue
                inside = True
                for t in range(s):
                    a = ea[t]
                    b = eb[t]
                    if ((xs[b] - xs[a]) * (ys[p] - ys[a])
                            - (ys[b] - ys[a]) * (xs[p] - xs[a])) <= 0:
                        inside = False
                        break
                if inside:
                    ok = False
                    break
            if ok:
                count += 1
        c0 = mask & (-mask)
        r0 = mask + c0
        mask = (((r0 ^ mask) >> 2) // c0) | r0
    return count


def _count_holes_python(xs, ys, s):
    """Third, plain-Python census path (reference and overflow fallback)."""
    n = len(xs)
    pts = list(zip(xs, ys))
    count = 0
    for sub in itertools.combinations(range(n), s):
        sel = [pts[i] for i in sub]
        if _convex_position_tuples(sel) and _empty_tuples(pts, sub, sel):
            count += 1
    return count


def count_holes_of_size(ps: Union[PointSet, Sequence[Point]], s: int,
                        method: str = "lex") -> int:
    """Number of s-subsets in convex position whose hull is empty.

    Desk-scale census: n <= 32 and 3 <= s <= 8.  `method` picks one of two
    independently coded enumerators ("lex" or "gosper") or the plain-Python
    reference ("python"); they must agree and tests check that they do.
    """
    sx, sy = _lex_sorted(ps)
    n = len(sx)
    if n > 32 or s > 8:
        raise TooLargeForOracle("census capped at n <= 32, s <= 8")
    if s < 3:
        raise HoleSearchError("hole sizes start at 3")
    if n < s:
        return 0
    if method == "python" or not _spans_fit_i64(sx, sy):
        return _count_holes_python([int(v) for v in sx], [int(v) for v in sy], s)
    if method == "lex":
        return int(_count_holes_lex(sx, sy, n, s))
    if method == "gosper":
        return int(_count_holes_gosper(sx, sy, n, s))
    raise HoleSearchError(f"unknown census method {method!r}")
