# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython state-sum kernel: same walk as kbsm._statesum_py, compiled.

Integer accumulators fit comfortably in 64 bits for any diagram this package
builds (coordinates are small rationals and crossing counts are capped);
`kbsm.statesum` falls back to the Python kernel when inputs look out of range.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


def bracket_counts(
    int ncross,
    list pair_plus,
    list pair_minus,
    list port_arc,
    list port_end,
    list arc_p0,
    list arc_p1,
    list arc_dx,
    list arc_dy,
    list a0x,
    list a0y,
    list a1x,
    list a1y,
    list arc_w,
    list arc_r,
    int mode,
):
    counts = {}
    if ncross == 0:
        counts[(0, 0, 0, 0, 0, 0)] = 1
        return counts

    cdef int nports = 4 * ncross
    cdef int narcs = len(arc_p0)
    cdef long long *pp = <long long *> malloc(nports * sizeof(long long))
    cdef long long *pm = <long long *> malloc(nports * sizeof(long long))
    cdef long long *pa = <long long *> malloc(nports * sizeof(long long))
    cdef long long *pe = <long long *> malloc(nports * sizeof(long long))
    cdef long long *ap0 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *ap1 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *adx = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *ady = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *x0 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *y0 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *x1 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *y1 = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *aw = <long long *> malloc(narcs * sizeof(long long))
    cdef long long *ar = <long long *> malloc(narcs * sizeof(long long))
    cdef char *visited = <char *> malloc(nports)
    if (pp == NULL or pm == NULL or pa == NULL or pe == NULL or ap0 == NULL
            or ap1 == NULL or adx == NULL or ady == NULL or x0 == NULL
            or y0 == NULL or x1 == NULL or y1 == NULL or aw == NULL
            or ar == NULL or visited == NULL):
        raise MemoryError()

    cdef int i
    try:
        for i in range(nports):
            pp[i] = pair_plus[i]
            pm[i] = pair_minus[i]
            pa[i] = port_arc[i]
            pe[i] = port_end[i]
        for i in range(narcs):
            ap0[i] = arc_p0[i]
            ap1[i] = arc_p1[i]
            adx[i] = arc_dx[i]
            ady[i] = arc_dy[i]
            x0[i] = a0x[i]
            y0[i] = a0y[i]
            x1[i] = a1x[i]
            y1[i] = a1y[i]
            aw[i] = arc_w[i]
            ar[i] = arc_r[i]

        _enumerate(ncross, nports, pp, pm, pa, pe, ap0, ap1, adx, ady,
                   x0, y0, x1, y1, aw, ar, visited, mode, counts)
    finally:
        free(pp); free(pm); free(pa); free(pe)
        free(ap0); free(ap1); free(adx); free(ady)
        free(x0); free(y0); free(x1); free(y1)
        free(aw); free(ar); free(visited)
    return counts


cdef long long _gcd(long long a, long long b):
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _enumerate(
    int ncross, int nports,
    long long *pp, long long *pm, long long *pa, long long *pe,
    long long *ap0, long long *ap1, long long *adx, long long *ady,
    long long *x0, long long *y0, long long *x1, long long *y1,
    long long *aw, long long *ar,
    char *visited, int mode, dict counts,
) except -1:
    cdef unsigned long long bits, nstates = (<unsigned long long> 1) << ncross
    cdef int p0, port, exit_port, nxt, arc, narc
    cdef int c, t, bp, mult
    cdef long long dx, dy, w, vx, vy, ax, ay, sp, sq, g
    cdef int punctured = mode == 2
    cdef int planar = mode == 0
    cdef object key

    for bits in range(nstates):
        c = 2 * <int> _popcount(bits) - ncross
        memset(visited, 0, nports)
        t = 0
        bp = 0
        sp = 0
        sq = 0
        mult = 0
        for p0 in range(nports):
            if visited[p0]:
                continue
            dx = 0; dy = 0; w = 0; vx = 0; vy = 0
            port = p0
            while True:
                visited[port] = 1
                arc = <int> pa[port]
                if pe[port] == 0:
                    dx += adx[arc]
                    dy += ady[arc]
                    if punctured:
                        w += aw[arc] + vx * ar[arc]
                    exit_port = <int> ap1[arc]
                    ax = x1[arc]
                    ay = y1[arc]
                else:
                    dx -= adx[arc]
                    dy -= ady[arc]
                    if punctured:
                        w -= aw[arc] + vx * ar[arc]
                    exit_port = <int> ap0[arc]
                    ax = x0[arc]
                    ay = y0[arc]
                visited[exit_port] = 1
                if (bits >> (exit_port >> 2)) & 1:
                    nxt = <int> pp[exit_port]
                else:
                    nxt = <int> pm[exit_port]
                if nxt == p0:
                    break
                narc = <int> pa[nxt]
                if pe[nxt] == 0:
                    vx += ax - x0[narc]
                    vy += ay - y0[narc]
                else:
                    vx += ax - x1[narc]
                    vy += ay - y1[narc]
                port = nxt
            if planar or (dx == 0 and dy == 0):
                if punctured and w != 0:
                    if w != 1 and w != -1:
                        raise ValueError(f"embedded cycle with winding {w}")
                    bp += 1
                else:
                    t += 1
            else:
                g = _gcd(dx, dy)
                if g != 1:
                    raise ValueError(f"non-primitive cycle class ({dx}, {dy})")
                if dx < 0 or (dx == 0 and dy < 0):
                    dx = -dx
                    dy = -dy
                if mult == 0:
                    sp = dx
                    sq = dy
                elif sp != dx or sq != dy:
                    raise ValueError("disjoint cycles with distinct slopes")
                mult += 1
        key = (c, t, <int> sp, <int> sq, mult, bp)
        if key in counts:
            counts[key] = counts[key] + 1
        else:
            counts[key] = 1
    return 0


cdef inline int _popcount(unsigned long long x):
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n
