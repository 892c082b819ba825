"""Seeded random diagrams for the verification suites.

Two generators are mixed: stacks of straight slope curves (guaranteed modest
crossing numbers from the slope determinants) and jittered random polygons
(which exercise self-crossings and winding).  Everything is driven by a
`random.Random` instance, so suites are reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .diagram import (
    Diagram,
    DiagramError,
    Surface,
    build_diagram,
)

F = Fraction

SLOPES = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]

DEFAULT_PUNCTURE = (F(5, 17), F(4, 19))


def surface_pool() -> list[Surface]:
    return [
        Surface("disk"),
        Surface("torus"),
        Surface("punctured_torus", DEFAULT_PUNCTURE),
    ]


def random_diagram(
    rng: random.Random, surface: Surface, max_crossings: int = 6, attempts: int = 400
) -> Diagram:
    for _ in range(attempts):
        try:
            if surface.kind == "disk":
                d = _random_polygons(rng, surface)
            elif rng.random() < 0.55:
                d = _random_slope_stack(rng, surface)
            else:
                d = _random_polygons(rng, surface)
        except DiagramError:
            continue
        if d.ncross > max_crossings:
            continue
        if d.ncross == 0 and rng.random() < 0.7:
            continue  # keep the suite crossing-heavy
        return d
    raise DiagramError("random diagram generation exhausted its attempts")


def _jitter(rng: random.Random, scale: int = 64) -> F:
    return F(rng.randrange(1, 23), 997 * scale)


def _random_slope_stack(rng: random.Random, surface: Surface) -> Diagram:
    n = rng.randrange(1, 4)
    specs = []
    for i in range(n):
        p, q = rng.choice(SLOPES)
        base = (
            F(rng.randrange(0, 13), 13) + _jitter(rng, 8 + i),
            F(rng.randrange(0, 11), 11) + _jitter(rng, 16 + i),
        )
        verts = [base, (base[0] + p, base[1] + q)]
        specs.append((verts, i))
    if rng.random() < 0.4:
        r = F(1, 16) + _jitter(rng)
        cx = F(rng.randrange(0, 7), 7) + _jitter(rng, 4)
        cy = F(rng.randrange(0, 5), 5) + _jitter(rng, 2)
        square = [
            (cx - r, cy - r),
            (cx + r, cy - r),
            (cx + r, cy + r),
            (cx - r, cy + r),
            (cx - r, cy - r),
        ]
        specs.append((square, n))
    return build_diagram(surface, specs)


def _random_polygons(rng: random.Random, surface: Surface) -> Diagram:
    ncomp = rng.randrange(1, 3)
    specs = []
    for i in range(ncomp):
        if surface.kind == "disk":
            cls = (0, 0)
        else:
            cls = rng.choice([(0, 0), (1, 0), (0, 1), (1, 1)])
        base = (
            F(rng.randrange(0, 9), 9) + _jitter(rng, 3 + i),
            F(rng.randrange(0, 7), 7) + _jitter(rng, 5 + i),
        )
        steps = rng.randrange(2, 5)
        verts = [base]
        for _ in range(steps):
            verts.append(
                (
                    base[0] + F(rng.randrange(-6, 7), 8) + _jitter(rng, 7 + i),
                    base[1] + F(rng.randrange(-6, 7), 8) + _jitter(rng, 11 + i),
                )
            )
        verts.append((base[0] + cls[0], base[1] + cls[1]))
        specs.append((verts, i))
    return build_diagram(
        surface, specs, auto_self_over=lambda ci, k, crossing: rng.random() < 0.5
    )


def random_state(rng: random.Random, d: Diagram) -> tuple[int, ...]:
    return tuple(rng.choice((1, -1)) for _ in range(d.ncross))


def suite(
    seed: int, trials: int, max_crossings: int = 6
) -> list[Diagram]:
    """The seeded verification suite: diagrams cycling over all surfaces."""
    rng = random.Random(seed)
    pool = surface_pool()
    out = []
    for i in range(trials):
        out.append(random_diagram(rng, pool[i % len(pool)], max_crossings))
    return out
