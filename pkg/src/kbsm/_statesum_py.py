"""Pure-Python state-sum kernel.

Enumerates all 2^n smoothings of a diagram's crossing graph and aggregates,
per state, the smoothing sum c, the number of disk-bounding cycles, and the
multicurve signature of the essential cycles.  This is the hot loop of the
whole package; `kbsm._statesum_c` is a Cython build of the same walk and the
two must agree state for state (see tests).

Port conventions and the integer class/winding accumulators are documented in
`kbsm.diagram.Skeleton`.
"""

from __future__ import annotations

from math import gcd

MODE_DISK = 0
MODE_TORUS = 1
MODE_PUNCTURED = 2


def bracket_counts(
    ncross: int,
    pair_plus: list[int],
    pair_minus: list[int],
    port_arc: list[int],
    port_end: list[int],
    arc_p0: list[int],
    arc_p1: list[int],
    arc_dx: list[int],
    arc_dy: list[int],
    a0x: list[int],
    a0y: list[int],
    a1x: list[int],
    a1y: list[int],
    arc_w: list[int],
    arc_r: list[int],
    mode: int,
) -> dict[tuple[int, int, int, int, int, int], int]:
    """Map (c, trivial count, slope p, slope q, multiplicity, boundary
    parallels) -> number of states resolving to it."""
    counts: dict[tuple[int, int, int, int, int, int], int] = {}
    if ncross == 0:
        counts[(0, 0, 0, 0, 0, 0)] = 1
        return counts

    nports = 4 * ncross
    punctured = mode == MODE_PUNCTURED
    planar = mode == MODE_DISK

    for bits in range(1 << ncross):
        c = 2 * bits.bit_count() - ncross
        visited = bytearray(nports)
        t = 0
        bp = 0
        sp = 0
        sq = 0
        mult = 0
        for p0 in range(nports):
            if visited[p0]:
                continue
            dx = dy = w = vx = vy = 0
            port = p0
            while True:
                visited[port] = 1
                arc = port_arc[port]
                if port_end[port] == 0:
                    dx += arc_dx[arc]
                    dy += arc_dy[arc]
                    if punctured:
                        w += arc_w[arc] + vx * arc_r[arc]
                    exit_port = arc_p1[arc]
                    ax = a1x[arc]
                    ay = a1y[arc]
                else:
                    dx -= arc_dx[arc]
                    dy -= arc_dy[arc]
                    if punctured:
                        w -= arc_w[arc] + vx * arc_r[arc]
                    exit_port = arc_p0[arc]
                    ax = a0x[arc]
                    ay = a0y[arc]
                visited[exit_port] = 1
                if (bits >> (exit_port >> 2)) & 1:
                    nxt = pair_plus[exit_port]
                else:
                    nxt = pair_minus[exit_port]
                if nxt == p0:
                    break
                narc = port_arc[nxt]
                if port_end[nxt] == 0:
                    vx += ax - a0x[narc]
                    vy += ay - a0y[narc]
                else:
                    vx += ax - a1x[narc]
                    vy += ay - a1y[narc]
                port = nxt
            # classify the finished cycle
            if planar or (dx == 0 and dy == 0):
                if punctured and w != 0:
                    if w not in (1, -1):
                        raise ValueError(f"embedded cycle with winding {w}")
                    bp += 1
                else:
                    t += 1
            else:
                g = gcd(abs(dx), abs(dy))
                if g != 1:
                    raise ValueError(f"non-primitive cycle class ({dx}, {dy})")
                if dx < 0 or (dx == 0 and dy < 0):
                    dx, dy = -dx, -dy
                if mult == 0:
                    sp, sq = dx, dy
                elif (sp, sq) != (dx, dy):
                    raise ValueError(
                        f"disjoint cycles with distinct slopes ({sp},{sq}), ({dx},{dy})"
                    )
                mult += 1
        key = (c, t, sp, sq, mult, bp)
        if key in counts:
            counts[key] += 1
        else:
            counts[key] = 1
    return counts
