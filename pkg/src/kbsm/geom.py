"""Exact rational plane geometry for curves on flat surfaces.

Points live in the universal cover Q^2; the torus is the quotient by Z^2.
Everything here is branch-free exact arithmetic on Fractions: segment
intersection with classification, integer-translate windows, primitive
directions, and the ray-crossing winding accumulators used for the puncture.
"""

from __future__ import annotations

import math
from fractions import Fraction

Pt = tuple[Fraction, Fraction]


def pt(x, y) -> Pt:
    return (Fraction(x), Fraction(y))


def add(a: Pt, b: Pt) -> Pt:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Pt, b: Pt) -> Pt:
    return (a[0] - b[0], a[1] - b[1])


def cross(a: Pt, b: Pt) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Pt, b: Pt) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def lerp(a: Pt, b: Pt, t: Fraction) -> Pt:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def floor_pt(a: Pt) -> tuple[int, int]:
    return (math.floor(a[0]), math.floor(a[1]))


def frac_pt(a: Pt) -> Pt:
    return (a[0] % 1, a[1] % 1)


def primitive_dir(v: Pt) -> tuple[int, int]:
    """Scale a nonzero rational vector to a primitive integer vector, keeping
    its direction."""
    if v == (0, 0):
        raise ValueError("zero direction")
    den = v[0].denominator * v[1].denominator // math.gcd(
        v[0].denominator, v[1].denominator
    )
    a, b = int(v[0] * den), int(v[1] * den)
    g = math.gcd(abs(a), abs(b))
    return (a // g, b // g)


def line_key(v: Pt) -> tuple[int, int]:
    """Undirected primitive direction: first nonzero coordinate positive."""
    a, b = primitive_dir(v)
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return (a, b)


def normalize_slope(v: tuple[int, int]) -> tuple[int, int]:
    """Primitive class with canonical sign; rejects non-primitive input."""
    a, b = int(v[0]), int(v[1])
    if (a, b) == (0, 0):
        raise ValueError("zero class has no slope")
    if math.gcd(abs(a), abs(b)) != 1:
        raise ValueError(f"class {v} is not primitive")
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return (a, b)


# ---------------------------------------------------------------------------
# Segment intersection
# ---------------------------------------------------------------------------

NONE = "none"
PROPER = "proper"  # transverse, interior on both segments
TOUCH = "touch"  # meets at an endpoint of at least one segment
OVERLAP = "overlap"  # collinear with positive-length intersection


def seg_intersect_int(a0, a1, b0, b1):
    """`seg_intersect` over integer-scaled coordinates (much faster): points
    are int pairs, the returned parameters are exact Fractions."""
    rx = a1[0] - a0[0]
    ry = a1[1] - a0[1]
    sx = b1[0] - b0[0]
    sy = b1[1] - b0[1]
    dx = b0[0] - a0[0]
    dy = b0[1] - a0[1]
    denom = rx * sy - ry * sx
    if denom == 0:
        if dx * ry - dy * rx != 0:
            return (NONE, None, None)
        rr = rx * rx + ry * ry
        t0n = dx * rx + dy * ry
        t1n = (b1[0] - a0[0]) * rx + (b1[1] - a0[1]) * ry
        lo_n, hi_n = min(t0n, t1n), max(t0n, t1n)
        lo_n = max(lo_n, 0)
        hi_n = min(hi_n, rr)
        if lo_n > hi_n:
            return (NONE, None, None)
        if lo_n == hi_n:
            t = Fraction(lo_n, rr)
            if t0n == t1n:
                u = Fraction(0)
            else:
                u = Fraction(lo_n - min(t0n, t1n), abs(t1n - t0n))
                if t0n > t1n:
                    u = 1 - u
            return (TOUCH, t, u)
        return (OVERLAP, None, None)
    tn = dx * sy - dy * sx
    un = dx * ry - dy * rx
    if denom < 0:
        tn, un, denom2 = -tn, -un, -denom
    else:
        denom2 = denom
    if 0 <= tn <= denom2 and 0 <= un <= denom2:
        if 0 < tn < denom2 and 0 < un < denom2:
            return (PROPER, Fraction(tn, denom2), Fraction(un, denom2))
        return (TOUCH, Fraction(tn, denom2), Fraction(un, denom2))
    return (NONE, None, None)


def seg_intersect(a0: Pt, a1: Pt, b0: Pt, b1: Pt):
    """Classify the intersection of segments [a0,a1] and [b0,b1].

    Returns (kind, t, u) where for kind proper/touch the intersection point is
    a0 + t*(a1-a0) = b0 + u*(b1-b0); t and u are exact Fractions in [0,1].
    """
    r = sub(a1, a0)
    s = sub(b1, b0)
    d = sub(b0, a0)
    denom = cross(r, s)
    if denom == 0:
        if cross(d, r) != 0:
            return (NONE, None, None)
        # collinear: parametrize b's endpoints along a
        rr = dot(r, r)
        t0 = dot(d, r) / rr
        t1 = dot(sub(b1, a0), r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo = max(lo, Fraction(0))
        hi = min(hi, Fraction(1))
        if lo > hi:
            return (NONE, None, None)
        if lo == hi:
            t = lo
            u = (t - min(t0, t1)) / (max(t0, t1) - min(t0, t1)) if t0 != t1 else Fraction(0)
            if t0 > t1:
                u = 1 - u
            return (TOUCH, t, u)
        return (OVERLAP, None, None)
    t = cross(d, s) / denom
    u = cross(d, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        if 0 < t < 1 and 0 < u < 1:
            return (PROPER, t, u)
        return (TOUCH, t, u)
    return (NONE, None, None)


_PREFILTER_MARGIN = 1e-7


def float_seg(a0: Pt, a1: Pt) -> tuple[float, float, float, float]:
    return (float(a0[0]), float(a0[1]), float(a1[0]), float(a1[1]))


def fast_disjoint(fa, fb, vx: float, vy: float) -> bool:
    """Certify, in floating point with a safety margin, that segment fa and
    segment fb translated by (vx, vy) do not meet.  False negatives are fine
    (the exact test runs next); false positives must not happen, hence the
    margin, which is generous for the coordinate sizes this package builds."""
    ax0, ay0, ax1, ay1 = fa
    bx0, by0, bx1, by1 = fb
    bx0 += vx
    by0 += vy
    bx1 += vx
    by1 += vy
    m = _PREFILTER_MARGIN
    if min(ax0, ax1) > max(bx0, bx1) + m or min(bx0, bx1) > max(ax0, ax1) + m:
        return True
    if min(ay0, ay1) > max(by0, by1) + m or min(by0, by1) > max(ay0, ay1) + m:
        return True
    rx = ax1 - ax0
    ry = ay1 - ay0
    d1 = rx * (by0 - ay0) - ry * (bx0 - ax0)
    d2 = rx * (by1 - ay0) - ry * (bx1 - ax0)
    if (d1 > m and d2 > m) or (d1 < -m and d2 < -m):
        return True
    sx = bx1 - bx0
    sy = by1 - by0
    d3 = sx * (ay0 - by0) - sy * (ax0 - bx0)
    d4 = sx * (ay1 - by0) - sy * (ax1 - bx0)
    if (d3 > m and d4 > m) or (d3 < -m and d4 < -m):
        return True
    return False


def translate_window(a0: Pt, a1: Pt, b0: Pt, b1: Pt):
    """Integer translates v such that [b0,b1]+v can meet [a0,a1].

    Bounds are computed in floating point and widened by one unit each way;
    spurious candidates are cheap to reject afterwards, missing a real one is
    not acceptable."""
    ax_lo, ax_hi = sorted((float(a0[0]), float(a1[0])))
    ay_lo, ay_hi = sorted((float(a0[1]), float(a1[1])))
    bx_lo, bx_hi = sorted((float(b0[0]), float(b1[0])))
    by_lo, by_hi = sorted((float(b0[1]), float(b1[1])))
    vx_lo = math.floor(ax_lo - bx_hi) - 1
    vx_hi = math.ceil(ax_hi - bx_lo) + 1
    vy_lo = math.floor(ay_lo - by_hi) - 1
    vy_hi = math.ceil(ay_hi - by_lo) + 1
    for vx in range(vx_lo, vx_hi + 1):
        for vy in range(vy_lo, vy_hi + 1):
            yield (vx, vy)


def point_on_segment(p: Pt, a0: Pt, a1: Pt) -> bool:
    r = sub(a1, a0)
    d = sub(p, a0)
    if cross(r, d) != 0:
        return False
    t = dot(d, r) / dot(r, r)
    return 0 <= t <= 1


def dist2_point_segment(p: Pt, a0: Pt, a1: Pt) -> Fraction:
    r = sub(a1, a0)
    d = sub(p, a0)
    rr = dot(r, r)
    t = dot(d, r) / rr
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    q = lerp(a0, a1, t)
    e = sub(p, q)
    return dot(e, e)


# ---------------------------------------------------------------------------
# Winding accumulators (puncture ray crossings)
# ---------------------------------------------------------------------------
#
# For a closed polygon K in the cover and puncture P, the total winding of K
# about all integer translates of P equals a sum over edges of
# sign * floor(c_x - P_x), taken over crossings c of each edge with the
# horizontal lines y = P_y + m (half-open at vertices so no genericity is
# needed there).  Translating an edge by v shifts its contribution by
# v_x * (signed row-crossing count), which is what makes the quantity
# accumulate additively along resolution walks.


def edge_winding_data(a: Pt, b: Pt, p: Pt) -> tuple[int, int]:
    """(floor-weighted crossing sum, signed row-crossing count) of edge a->b."""
    ay, by = a[1] - p[1], b[1] - p[1]
    if ay == by:
        return (0, 0)
    sign = 1 if by > ay else -1
    lo, hi = (ay, by) if sign == 1 else (by, ay)
    # integer rows m with lo <= m < hi
    w = 0
    r = 0
    m = math.ceil(lo)
    while m < hi:
        yline = p[1] + m
        cx = a[0] + (yline - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
        delta = cx - p[0]
        if delta.denominator == 1:
            raise ValueError("puncture translate lies on the curve")
        w += sign * math.floor(delta)
        r += sign
        m += 1
    return (w, r)


def polyline_winding_data(points: list[Pt], p: Pt) -> tuple[int, int]:
    w_total = 0
    r_total = 0
    for a, b in zip(points, points[1:]):
        w, r = edge_winding_data(a, b, p)
        w_total += w
        r_total += r
    return (w_total, r_total)


def unimodular_to_x(d: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """A determinant +1 integer matrix U with U @ d = (1, 0)."""
    a, b = d
    g = math.gcd(abs(a), abs(b))
    if g != 1:
        raise ValueError("cut direction must be primitive")
    s, t = _ext_gcd(a, b)
    # rows of U: (s, t) and (-b, a); det = s*a + t*b = 1
    return ((s, t), (-b, a))


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    """(s, t) with s*a + t*b = gcd = 1 for coprime a, b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return (old_s, old_t)


def apply_mat(u: tuple[tuple[int, int], tuple[int, int]], v: Pt) -> Pt:
    return (u[0][0] * v[0] + u[0][1] * v[1], u[1][0] * v[0] + u[1][1] * v[1])
