"""Genus-1 Heegaard data: handle slides, Z2-linking numbers, the signed
product on the null-graded skein part, writhe audits, and truncated quotient
presentations of the resulting manifold skein modules.

A manifold is presented by disjoint attaching curves on the torus: red curves
bound disks above the collar, blue below.  Handle slides are band sums of a
simple starting diagram with parallel copies of attaching curves; the band
schema is deterministic (straight chords with an integer winding offset), so
relation sets are reproducible and every slide records enough orientation
data to cross-check its writhe against the intersection-pairing formula

    w = omega(start, blue - red) + omega(red, blue)

computed from oriented homology classes alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import geom
from .diagram import (
    Diagram,
    DiagramError,
    OrientedDiagram,
    SimpleMulticurve,
    Surface,
    build_diagram,
    make_multicurve,
    orient_data,
    realize_multicurve,
    stack,
)
from .homology import Lattice, smith_form
from .linalg import SparseMatrix, rref_rank
from .ring import GaussRat, LaurentPoly, MINUS_I as MINUS_I_UNIT, MINUS_ONE as MINUS_ONE_UNIT, i_power
from .skein import Skein, bracket, psi

F = Fraction

__all__ = [
    "HeegaardData",
    "SlideBounds",
    "SlideRelation",
    "lens_space",
    "manifold_h1",
    "elementary_slide",
    "compound_slide",
    "generate_relations",
    "lk2",
    "k0_product",
    "writhe_mod4_audit",
    "psi_on_relations",
    "truncated_quotient",
]

TORUS = Surface("torus")
LATTICE = Lattice.symplectic(1)


class AuditError(RuntimeError):
    """A generated slide violated an identity that must hold exactly."""


@dataclass(frozen=True)
class HeegaardData:
    """Attaching-curve classes of a genus-1 splitting: red above, blue below."""

    red: tuple[tuple[int, int], ...]
    blue: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "red", tuple((int(p), int(q)) for p, q in self.red))
        object.__setattr__(self, "blue", tuple((int(p), int(q)) for p, q in self.blue))
        for name, curves in (("red", self.red), ("blue", self.blue)):
            slopes = {geom.normalize_slope(c) for c in curves}
            if len(slopes) > 1:
                raise DiagramError(
                    f"{name} attaching curves must be disjoint, got slopes {sorted(slopes)}"
                )

    @property
    def surface(self) -> Surface:
        return TORUS


def lens_space(p: int, q: int = 1) -> HeegaardData:
    """Genus-1 data with H_1 = Z/p: red meridian (1,0), blue (q,p)."""
    return HeegaardData(((1, 0),), ((q, p),))


S3 = lens_space(1, 0)  # red (1,0), blue (0,1)


@dataclass(frozen=True)
class H1Report:
    invariant_factors: tuple[int, ...]
    free_rank: int
    two_torsion: bool

    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def manifold_h1(h: HeegaardData) -> H1Report:
    """First homology of the manifold: the torus lattice modulo the span of
    all attaching classes, by Smith normal form."""
    cols = list(h.red) + list(h.blue)
    if not cols:
        return H1Report((), 2, False)
    mat = [[c[i] for c in cols] for i in range(2)]
    d = list(smith_form(mat).d)
    while len(d) < 2:
        d.append(0)
    nontrivial = tuple(x for x in d if x not in (0, 1))
    free = sum(1 for x in d[:2] if x == 0)
    two_torsion = any(x % 2 == 0 for x in nontrivial)
    return H1Report(nontrivial, free, two_torsion)


# ---------------------------------------------------------------------------
# GF(2) decompositions over the attaching classes
# ---------------------------------------------------------------------------


def _gf2_solve(h: HeegaardData, target: tuple[int, int]):
    """All (red coefficients, blue coefficients) with sum = target mod 2."""
    cols = [(c[0] & 1, c[1] & 1) for c in h.red] + [
        (c[0] & 1, c[1] & 1) for c in h.blue
    ]
    n = len(cols)
    solutions = []
    for bits in range(1 << n):
        acc = [0, 0]
        for i in range(n):
            if (bits >> i) & 1:
                acc[0] ^= cols[i][0]
                acc[1] ^= cols[i][1]
        if acc[0] == target[0] & 1 and acc[1] == target[1] & 1:
            eps = tuple((bits >> i) & 1 for i in range(len(h.red)))
            delta = tuple((bits >> (len(h.red) + i)) & 1 for i in range(len(h.blue)))
            solutions.append((eps, delta))
    return solutions


def is_null_in_manifold(h: HeegaardData, cls: tuple[int, int]) -> bool:
    return bool(_gf2_solve(h, cls))


# ---------------------------------------------------------------------------
# Attaching-curve realizations
# ---------------------------------------------------------------------------

RED_LEVEL = F(100)
BLUE_LEVEL = F(-100)
BAND_LEVEL = F(10)


def _curve_line(cls: tuple[int, int], base: tuple[Fraction, Fraction]):
    return [base, (base[0] + cls[0], base[1] + cls[1])]


def _copy_base(
    cls: tuple[int, int], index: int, total: int, salt: int
) -> tuple[Fraction, Fraction]:
    """Base point of the index-th parallel copy: coarse perpendicular spacing
    so that distinct copies stay far apart compared to band widths."""
    p, q = cls
    sep = F(index + 1, 4 * (total + 1) * (p * p + q * q))
    return (
        F(1, 2) + F(1, 139 + 2 * salt) - sep * q,
        F(1, 3) + F(1, 149 + 2 * salt) + sep * p,
    )


# ---------------------------------------------------------------------------
# Handle slides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlideSpec:
    """One elementary slide: a band from the start diagram to a fresh parallel
    copy of an attaching curve."""

    color: str  # "red" | "blue"
    curve: int = 0  # index into the attaching list
    winding: tuple[int, int] = (0, 0)
    copy_dir: int = -1  # traversal orientation of the copy in the band sum
    attach: int = 0  # which start component carries the band


@dataclass(frozen=True)
class SlideRelation:
    start: Diagram
    result: Diagram
    start_multicurve: SimpleMulticurve
    used: tuple[tuple[str, tuple[int, int], int], ...]  # (color, class, direction)
    slide_class: tuple[int, int]

    @property
    def red_class(self) -> tuple[int, int]:
        return _signed_total(self.used, "red")

    @property
    def blue_class(self) -> tuple[int, int]:
        return _signed_total(self.used, "blue")


def _signed_total(used, color) -> tuple[int, int]:
    x = y = 0
    for col, cls, direction in used:
        if col == color:
            x += direction * cls[0]
            y += direction * cls[1]
    return (x, y)


def compound_slide(
    start: Diagram,
    slides: list[SlideSpec],
    h: HeegaardData,
    salt: int = 0,
) -> SlideRelation:
    """Band-sum `start` with one fresh parallel copy per slide.

    All bands attach to component 0 of the start diagram, pass over the start
    and blue copies, under red copies, with later bands over earlier ones.
    Raises DiagramError when no band geometry in the retry schedule validates.
    """
    if not slides:
        raise DiagramError("a compound slide needs at least one band")
    if start.ncomp == 0:
        raise DiagramError("cannot slide the empty diagram")
    last_err: Exception | None = None
    for attempt in range(5):
        try:
            return _slide_attempt(start, slides, h, salt * 17 + attempt)
        except DiagramError as e:
            last_err = e
    raise DiagramError(f"slide construction failed: {last_err}")


def _seg_hits(a0, a1, b0, b1):
    """Transverse intersections of segment a with torus translates of b,
    as (t on a, u on b, translate), sorted by t."""
    hits = []
    fa = geom.float_seg(a0, a1)
    fb = geom.float_seg(b0, b1)
    for v in geom.translate_window(a0, a1, b0, b1):
        if geom.fast_disjoint(fa, fb, v[0], v[1]):
            continue
        vv = (F(v[0]), F(v[1]))
        kind, t, u = geom.seg_intersect(a0, a1, geom.add(b0, vv), geom.add(b1, vv))
        if kind == geom.PROPER:
            hits.append((t, u, vv))
    hits.sort()
    return hits


def _slide_attempt(start, slides, h, salt: int) -> SlideRelation:
    ncomp = start.ncomp
    by_attach: dict[int, list[tuple[int, SlideSpec]]] = {}
    for j, spec in enumerate(slides):
        if not 0 <= spec.attach < ncomp:
            raise DiagramError(f"band attaches to missing component {spec.attach}")
        by_attach.setdefault(spec.attach, []).append((j, spec))
    nb = len(slides)
    h_t = F(1, 1 << (16 + salt)) / nb

    specs_out = []
    seg_band: dict[int, dict[int, tuple[int, Fraction, Fraction]]] = {}
    used_by_j: dict[int, tuple[str, tuple[int, int], int]] = {}
    for ci, comp in enumerate(start.components):
        if ci not in by_attach:
            specs_out.append((list(comp.vertices), list(comp.seg_levels)))
            continue
        pts, levels, bands, comp_used = _merge_bands(
            comp, by_attach[ci], h, salt, h_t, nb
        )
        specs_out.append((pts, levels))
        seg_band[ci] = bands
        used_by_j.update(comp_used)

    def band_over(ci, k, crossing):
        # A band strip crossing its own torus translate: make one passage pass
        # entirely over the other (the one nearer the start foot wins), which
        # keeps the two side crossings of each overlap cancelling in the
        # writhe like every other strip crossing.
        (ca, sa, ta) = crossing.a
        (cb, sb, tb) = crossing.b
        info_a = seg_band.get(ca, {}).get(sa)
        info_b = seg_band.get(cb, {}).get(sb)
        if info_a is None or info_b is None:
            raise DiagramError("unexpected ambiguous crossing in a slide")
        _, a_lo, a_hi = info_a
        _, b_lo, b_hi = info_b
        pa = a_lo + (a_hi - a_lo) * ta
        pb = b_lo + (b_hi - b_lo) * tb
        if pa == pb:
            raise DiagramError("tangential strip self-overlap")
        return pa < pb

    result = build_diagram(TORUS, specs_out, auto_self_over=band_over)

    # Thin-strip hypothesis, verified: the sides of each band must cancel out
    # of the writhe entirely (their crossings come in sign-opposite pairs).
    # Degenerate geometry (a side threading another band's foot gap) breaks
    # this; such candidates are rejected and rebuilt on the retry schedule.
    data = orient_data(OrientedDiagram(result, (1,) * result.ncomp))
    band_sum: dict[int, int] = {}
    for c, sign in zip(result.crossings, data.signs):
        for ci, si, _ in (c.a, c.b):
            info = seg_band.get(ci, {}).get(si)
            if info is not None:
                band_sum[info[0]] = band_sum.get(info[0], 0) + sign
    if any(v != 0 for v in band_sum.values()):
        raise DiagramError(f"band sides are not writhe-neutral: {band_sum}")

    used = tuple(used_by_j[j] for j in range(nb))
    slide_class = (
        sum(cls[0] for _, cls, _ in used),
        sum(cls[1] for _, cls, _ in used),
    )
    from .diagram import canonical_multicurve

    start_mc = canonical_multicurve(start)
    return SlideRelation(
        start=start,
        result=result,
        start_multicurve=start_mc,
        used=used,
        slide_class=(slide_class[0], slide_class[1]),
    )


def _merge_bands(comp, jslides, h, salt: int, h_t: Fraction, nb: int):
    """Band-sum one straight start component with its copies; returns the
    merged polyline, per-segment levels, the band bookkeeping for over/under
    and neutrality checks, and the oriented classes used."""
    if comp.nseg != 1:
        raise DiagramError("slides attach to straight-line starting components")
    a0, a1 = comp.vertices

    plans = []
    for j, spec in jslides:
        curves = h.red if spec.color == "red" else h.blue
        cls_c = curves[spec.curve]
        base = _copy_base(cls_c, j, nb, salt)
        ccls = (F(cls_c[0]), F(cls_c[1]))
        hits = _seg_hits(a0, a1, base, geom.add(base, ccls))
        if hits:
            t_x, u_x, v = hits[j % len(hits)]
            t_c = t_x - 4 * h_t
            # feet on the near side of the crossing for a reversed copy run,
            # far side for a forward one; the wrong side twists the band
            u_c = u_x - 4 * h_t if spec.copy_dir == -1 else u_x + 4 * h_t
        else:
            t_c = F(2 * j + 1, 2 * nb) + F(1, 977 + 31 * salt + 7 * j)
            u_c = F(1, 2) + F(1, 953 + 29 * salt + 11 * j)
            v = (F(0), F(0))
        plans.append([t_c, u_c, v, j, spec, cls_c, base, ccls])
    plans.sort(key=lambda p: p[0])
    for i in range(1, len(plans)):
        if plans[i][0] - h_t <= plans[i - 1][0] + h_t:
            plans[i][0] = plans[i - 1][0] + 6 * h_t
    if not (0 < plans[0][0] - h_t and plans[-1][0] + h_t < 1):
        raise DiagramError("band feet escape the start segment")

    pts: list = [a0]
    levels: list[Fraction] = []
    bands: dict[int, tuple[int, Fraction, Fraction]] = {}
    used: dict[int, tuple[str, tuple[int, int], int]] = {}
    offset = (F(0), F(0))

    def push(point, level, band_info=None):
        pts.append(point)
        levels.append(level)
        if band_info is not None:
            bands[len(levels) - 1] = band_info

    for t_c, u_c, v, j, spec, cls_c, base, ccls in plans:
        if not (0 < u_c - h_t and u_c + h_t < 1):
            raise DiagramError("band foot escapes the copy segment")
        f1 = geom.lerp(a0, a1, t_c - h_t)
        f2 = geom.lerp(a0, a1, t_c + h_t)
        g1 = (base[0] + (u_c - h_t) * ccls[0], base[1] + (u_c - h_t) * ccls[1])
        g2 = (base[0] + (u_c + h_t) * ccls[0], base[1] + (u_c + h_t) * ccls[1])
        shift = (v[0] + spec.winding[0], v[1] + spec.winding[1])
        band_level = BAND_LEVEL + j
        copy_level = (RED_LEVEL if spec.color == "red" else BLUE_LEVEL) + (
            j if spec.color == "red" else -j
        )
        push(geom.add(f1, offset), F(0))
        if spec.copy_dir == -1:
            attach1 = g1
            delta = (-cls_c[0], -cls_c[1])
            run_end_base = geom.sub(g2, ccls)
        else:
            attach1 = g2
            delta = (cls_c[0], cls_c[1])
            run_end_base = geom.add(g1, ccls)
        side1_end = geom.add(geom.add(attach1, shift), offset)
        run_end = geom.add(geom.add(run_end_base, shift), offset)
        # long bands detour through a displaced waypoint so their sides cross
        # other strands at generic positions, never near the feet gaps where
        # the pairwise cancellation of side crossings could break
        chord = geom.sub(geom.add(attach1, shift), f1)
        long_band = chord[0] * chord[0] + chord[1] * chord[1] > F(1, 64)
        if long_band:
            disp = F(1, 4 + 3 * j + (salt % 7))
            mid = geom.lerp(f1, geom.add(attach1, shift), F(1, 2))
            way = (mid[0] - chord[1] * disp, mid[1] + chord[0] * disp)
            push(geom.add(way, offset), band_level, (j, F(0), F(1, 2)))
            push(side1_end, band_level, (j, F(1, 2), F(1)))
        else:
            push(side1_end, band_level, (j, F(0), F(1)))
        push(run_end, copy_level)
        offset = (offset[0] + delta[0], offset[1] + delta[1])
        if long_band:
            foot_step = geom.sub(f2, f1)
            way2 = geom.add(way, foot_step)
            push(geom.add(way2, offset), band_level, (j, F(1), F(1, 2)))
            push(geom.add(f2, offset), band_level, (j, F(1, 2), F(0)))
        else:
            push(geom.add(f2, offset), band_level, (j, F(1), F(0)))
        used[j] = (spec.color, cls_c, 1 if spec.copy_dir == 1 else -1)
    push(geom.add(a1, offset), F(0))
    return pts, levels, bands, used


def elementary_slide(
    start: Diagram, spec: SlideSpec, h: HeegaardData, salt: int = 0
) -> SlideRelation:
    return compound_slide(start, [spec], h, salt)


@dataclass(frozen=True)
class SlideBounds:
    max_multiplicity: int = 2
    max_slope: int = 2
    max_copies: int = 2
    winding_range: int = 1
    max_arcs: int = 4
    max_crossings: int = 16
    quotient_max_crossings: int = 12
    both_directions: bool = True
    limit: int | None = None


def _slopes_up_to(bound: int) -> list[tuple[int, int]]:
    out = []
    for p in range(0, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0) or math.gcd(p, abs(q)) != 1:
                continue
            if p == 0 and q < 0:
                continue
            out.append((p, q))
    return sorted(out)


def _windings(bound: int) -> list[tuple[int, int]]:
    return sorted(
        (x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)
    )


def generate_relations(
    h: HeegaardData, bounds: SlideBounds = SlideBounds()
) -> list[SlideRelation]:
    """Deterministic compound-slide enumeration.

    Kept slides: the start is a surface-null simple multicurve (even
    multiplicity of one slope), the slide class is even, and the resulting
    diagram stays within the crossing budget.  Dimensions derived from this
    set are upper-bound presentations; nothing asserts the schema spans the
    kernel at a given truncation.
    """
    out: list[SlideRelation] = []
    reds = len(h.red)
    blues = len(h.blue)
    for slope in _slopes_up_to(bounds.max_slope):
        for mult in range(2, bounds.max_multiplicity + 1, 2):
            start = realize_multicurve(
                make_multicurve(TORUS, {slope: mult}), TORUS
            )
            for a in range(0, bounds.max_copies + 1):
                for c in range(0, bounds.max_copies + 1):
                    if a + c == 0 or a + c > bounds.max_arcs:
                        continue
                    if not reds and a:
                        continue
                    if not blues and c:
                        continue
                    scls = (
                        a * h.red[0][0] + c * h.blue[0][0],
                        a * h.red[0][1] + c * h.blue[0][1],
                    )
                    if scls[0] % 2 or scls[1] % 2:
                        continue
                    dirs = (-1, 1) if bounds.both_directions else (-1,)
                    attach_schemes = ("first",) if mult == 1 else ("first", "spread")
                    for direction in dirs:
                        for scheme in attach_schemes:
                            for w in _windings(bounds.winding_range):
                                colors = ["red"] * a + ["blue"] * c
                                specs = [
                                    SlideSpec(
                                        color,
                                        0,
                                        w,
                                        direction,
                                        attach=(k % mult if scheme == "spread" else 0),
                                    )
                                    for k, color in enumerate(colors)
                                ]
                                try:
                                    rel = compound_slide(start, specs, h)
                                except DiagramError:
                                    continue
                                if rel.result.ncross > bounds.max_crossings:
                                    continue
                                out.append(rel)
                                if bounds.limit and len(out) >= bounds.limit:
                                    return out
    return out


# ---------------------------------------------------------------------------
# Z2-linking numbers and the signed product
# ---------------------------------------------------------------------------


def _crossings_between(d: Diagram, split: int) -> tuple[int, int]:
    """(crossings between the two component groups, count with first group
    over), where components < split form the first group."""
    total = 0
    first_over = 0
    for c in d.crossings:
        ia = c.a[0] < split
        ib = c.b[0] < split
        if ia == ib:
            continue
        total += 1
        over_first = (c.over_is_a and ia) or (not c.over_is_a and ib)
        if over_first:
            first_over += 1
    return total, first_over


def _count_intersections(below: Diagram, lines: list[tuple[int, int]], salt: int) -> int:
    """Transverse intersections of the projection of `below` with disjoint
    geodesic representatives of the given classes."""
    if not lines:
        return 0
    for attempt in range(12):
        specs = [(list(c.vertices), list(c.seg_levels)) for c in below.components]
        lvl = max((lv for comp in below.components for lv in comp.seg_levels), default=F(0)) + 1000
        for i, cls in enumerate(lines):
            base = _copy_base(cls, i, len(lines), 31 * salt + attempt)
            specs.append((_curve_line(cls, base), lvl + i))
        try:
            combined = build_diagram(TORUS, specs)
        except DiagramError:
            continue
        split = below.ncomp
        total = 0
        for c in combined.crossings:
            ia = c.a[0] < split
            ib = c.b[0] < split
            if ia != ib:
                total += 1
        return total
    raise DiagramError("could not realize the capping curves transversally")


def lk2(above: Diagram, below: Diagram, h: HeegaardData, salt: int = 0) -> int:
    """Mod-2 linking number of `above` (null in the manifold) with `below`.

    The capping surface hangs downward from `above`: over-crossings of
    `above` across `below` count the vertical annulus, and the red part of a
    GF(2) decomposition of [above] counts the tubes rising to the upper
    handles.  The result is checked over every decomposition.
    """
    cls_a = tuple(x & 1 for x in _total_class(above))
    sols = _gf2_solve(h, cls_a)
    if not sols:
        raise DiagramError("the upper diagram is not null in the manifold")
    # the two diagrams share one collar with their own levels; the capping
    # annulus of `above` hangs downward, so only its over-crossings count
    combined = _union_as_given(above, below)
    split = above.ncomp
    _, over = _crossings_between(combined, split)
    values = set()
    for eps, _delta in sols:
        rho = [h.red[i] for i, e in enumerate(eps) if e]
        rho_count = _count_intersections(below, rho, salt)
        values.add((over + rho_count) % 2)
    if len(values) != 1:
        raise AuditError("linking number depends on the GF(2) decomposition")
    return values.pop()


def _total_class(d: Diagram) -> tuple[int, int]:
    x = y = 0
    for comp in d.components:
        x += comp.class_vec[0]
        y += comp.class_vec[1]
    return (x, y)


def _union_as_given(above: Diagram, below: Diagram) -> Diagram:
    """Union of the two arrangements with their levels untouched (they must
    already be disjoint and in general position)."""
    specs = [(list(c.vertices), list(c.seg_levels)) for c in above.components]
    specs += [(list(c.vertices), list(c.seg_levels)) for c in below.components]
    from .diagram import _diagram_point_overrides

    pov = dict(_diagram_point_overrides(below))
    pov.update(_diagram_point_overrides(above))
    return build_diagram(TORUS, specs, point_overrides=pov or None)


def k0_product(
    x: Diagram,
    y: Diagram,
    h: HeegaardData,
    zeta: GaussRat,
    max_crossings: int = 20,
) -> Skein:
    """(-1)^lk2(x, y) <x stacked over y> evaluated at the chosen unit.

    Both factors must be null in the manifold's Z2 homology (the closed
    manifolds here have trivial boundary grading, so the module action and the
    algebra product coincide on valid inputs).
    """
    for name, d in (("first", x), ("second", y)):
        if not is_null_in_manifold(h, tuple(v & 1 for v in _total_class(d))):
            raise DiagramError(f"{name} factor is not null in the manifold")
    combined = stack(x, y)
    split = x.ncomp
    _, over = _crossings_between(combined, split)
    sols = _gf2_solve(h, tuple(v & 1 for v in _total_class(x)))
    values = set()
    for eps, _delta in sols:
        rho = [h.red[i] for i, e in enumerate(eps) if e]
        values.add((over + _count_intersections(y, rho, 0)) % 2)
    if len(values) != 1:
        raise AuditError("linking number depends on the GF(2) decomposition")
    sign = values.pop()
    out = bracket(combined, max_crossings)
    evaluated = {
        mc: LaurentPoly.const(c.eval_unit(zeta)) for mc, c in out.terms.items()
    }
    skein = Skein(TORUS, evaluated)
    if sign:
        skein = skein.scale(GaussRat(-1))
    return skein


def k0_product_skein(
    a: Skein, b: Skein, h: HeegaardData, zeta: GaussRat, max_crossings: int = 20
) -> Skein:
    """Bilinear extension of k0_product over basis multicurves."""
    out = Skein.zero(TORUS)
    for mc_a, ca in a.terms.items():
        xa = realize_multicurve(mc_a, TORUS)
        for mc_b, cb in b.terms.items():
            xb = realize_multicurve(mc_b, TORUS, variant=1)
            prod = k0_product(xa, xb, h, zeta, max_crossings)
            out = out + prod.scale_poly(ca * cb)
    return out


# ---------------------------------------------------------------------------
# Audits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WritheAuditEntry:
    start: SimpleMulticurve
    used: tuple
    writhe: int
    writhe_mod4: int
    pairing_writhe: int


@dataclass(frozen=True)
class WritheAuditReport:
    h1: H1Report
    entries: tuple[WritheAuditEntry, ...]
    histogram: dict[int, int]
    pairing_agrees: bool

    @property
    def all_divisible(self) -> bool:
        return set(self.histogram) <= {0}

    def witnesses(self, residue: int = 2) -> list[WritheAuditEntry]:
        return [e for e in self.entries if e.writhe_mod4 == residue]


def writhe_mod4_audit(
    h: HeegaardData,
    bounds: SlideBounds = SlideBounds(),
    relations: list[SlideRelation] | None = None,
) -> WritheAuditReport:
    """Writhe of every generated slide, geometrically and by the pairing
    formula, with the mod-4 histogram."""
    if relations is None:
        relations = generate_relations(h, bounds)
    entries = []
    agrees = True
    for rel in relations:
        od = OrientedDiagram(rel.result, (1,) * rel.result.ncomp)
        w = orient_data(od).writhe
        sbar = _total_class(rel.start)
        rbar = rel.red_class
        bbar = rel.blue_class
        pairing = LATTICE.omega(
            sbar, (bbar[0] - rbar[0], bbar[1] - rbar[1])
        ) + LATTICE.omega(rbar, bbar)
        if pairing != w:
            agrees = False
        entries.append(
            WritheAuditEntry(
                start=rel.start_multicurve,
                used=rel.used,
                writhe=w,
                writhe_mod4=w % 4,
                pairing_writhe=pairing,
            )
        )
    histogram: dict[int, int] = {}
    for e in entries:
        histogram[e.writhe_mod4] = histogram.get(e.writhe_mod4, 0) + 1
    return WritheAuditReport(
        h1=manifold_h1(h),
        entries=tuple(entries),
        histogram=histogram,
        pairing_agrees=agrees,
    )


@dataclass(frozen=True)
class PsiRelationEntry:
    start: SimpleMulticurve
    coeff_start: GaussRat
    coeff_result: GaussRat
    lift_start: tuple[int, ...]
    lift_result: tuple[int, ...]

    @property
    def matches(self) -> bool:
        return (
            self.coeff_start == self.coeff_result
            and self.lift_start == self.lift_result == (0, 0)
        )


@dataclass(frozen=True)
class PsiRelationReport:
    h1: H1Report
    entries: tuple[PsiRelationEntry, ...]

    @property
    def all_match(self) -> bool:
        return all(e.matches for e in self.entries)

    def failures(self) -> list[PsiRelationEntry]:
        return [e for e in self.entries if not e.matches]


def psi_on_relations(
    h: HeegaardData,
    bounds: SlideBounds = SlideBounds(),
    relations: list[SlideRelation] | None = None,
) -> PsiRelationReport:
    """Does the twist map send each slide relation to itself tensor the
    trivial lift?  Expected to hold exactly when the manifold has no
    2-torsion; failures are reported as data."""
    if relations is None:
        relations = generate_relations(h, bounds)
    entries = []
    for rel in relations:
        vs = psi(rel.start)
        vr = psi(rel.result)
        entries.append(
            PsiRelationEntry(
                start=rel.start_multicurve,
                coeff_start=vs.coeff,
                coeff_result=vr.coeff,
                lift_start=vs.lift,
                lift_result=vr.lift,
            )
        )
    return PsiRelationReport(h1=manifold_h1(h), entries=tuple(entries))


# ---------------------------------------------------------------------------
# Truncated quotient presentations
# ---------------------------------------------------------------------------


def truncation_basis(n: int) -> list[SimpleMulticurve]:
    """Surface-null simple multicurves with strand complexity at most n."""
    out = [make_multicurve(TORUS, {})]
    for p, q in _slopes_up_to(n):
        weight = abs(p) + abs(q)
        m = 2
        while m * weight <= n:
            out.append(make_multicurve(TORUS, {(p, q): m}))
            m += 2
    return sorted(out, key=lambda mc: mc.sort_key())


@dataclass(frozen=True)
class QuotientPresentation:
    """A truncated (upper bound) presentation of the null-graded skein of the
    manifold at one unit."""

    zeta: GaussRat
    truncation: int
    basis: tuple[SimpleMulticurve, ...]
    matrix: tuple  # rows over the basis, GaussRat entries
    dimension: int
    relations_used: int
    relations_dropped: int


def _relation_bracket(
    rel: SlideRelation,
    basis_index: dict[SimpleMulticurve, int],
    max_crossings: int,
) -> Skein | None:
    """The bracket of the slide's result if it stays computable and inside
    the truncation span, else None (the relation is dropped)."""
    if rel.start_multicurve not in basis_index:
        return None
    if rel.result.ncross > max_crossings:
        return None
    br = bracket(rel.result, max_crossings)
    if any(mc not in basis_index for mc in br.terms):
        return None
    return br


def _row_at(
    rel: SlideRelation,
    br: Skein,
    basis_index: dict[SimpleMulticurve, int],
    zeta: GaussRat,
) -> dict[int, GaussRat]:
    row: dict[int, GaussRat] = {basis_index[rel.start_multicurve]: GaussRat(1)}
    for mc, coeff in br.terms.items():
        j = basis_index[mc]
        val = row.get(j, GaussRat(0)) - coeff.eval_unit(zeta)
        if val:
            row[j] = val
        else:
            row.pop(j, None)
    return row


def truncated_quotient(
    h: HeegaardData,
    zeta: GaussRat,
    truncation: int,
    bounds: SlideBounds = SlideBounds(),
    relations: list[SlideRelation] | None = None,
) -> QuotientPresentation:
    basis = truncation_basis(truncation)
    index = {mc: i for i, mc in enumerate(basis)}
    if relations is None:
        relations = generate_relations(h, bounds)
    rows = []
    dropped = 0
    for rel in relations:
        br = _relation_bracket(rel, index, bounds.quotient_max_crossings)
        if br is None:
            dropped += 1
            continue
        row = _row_at(rel, br, index, zeta)
        if row:
            rows.append(row)
    res = rref_rank(SparseMatrix(rows, len(basis)))
    return QuotientPresentation(
        zeta=zeta,
        truncation=truncation,
        basis=tuple(basis),
        matrix=tuple(tuple(sorted(r.items())) for r in rows),
        dimension=len(basis) - res.rank,
        relations_used=len(rows),
        relations_dropped=dropped,
    )


@dataclass(frozen=True)
class QuotientComparison:
    at_minus_i: QuotientPresentation
    at_minus_one: QuotientPresentation
    phi_rows_match: bool

    @property
    def dimensions_equal(self) -> bool:
        return self.at_minus_i.dimension == self.at_minus_one.dimension


def quotient_comparison(
    h: HeegaardData,
    truncation: int,
    bounds: SlideBounds = SlideBounds(),
    relations: list[SlideRelation] | None = None,
) -> QuotientComparison:
    """Both truncated presentations from one enumeration and one bracket pass
    per relation, plus the entry-wise row correspondence:

        (-1)^{n(start)} row_{-1}[mc] = (-1)^{n(mc)} row_{-i}[mc]

    which is the matrix-level content of the twist map acting trivially on
    the relation span (expected exactly when there is no 2-torsion)."""
    basis = truncation_basis(truncation)
    index = {mc: i for i, mc in enumerate(basis)}
    if relations is None:
        relations = generate_relations(h, bounds)
    rows_i = []
    rows_1 = []
    dropped = 0
    phi_match = True
    for rel in relations:
        br = _relation_bracket(rel, index, bounds.quotient_max_crossings)
        if br is None:
            dropped += 1
            continue
        row_i = _row_at(rel, br, index, MINUS_I_UNIT)
        row_1 = _row_at(rel, br, index, MINUS_ONE_UNIT)
        n_start = rel.start_multicurve.n_components()
        for j in set(row_i) | set(row_1):
            lhs = i_power(2 * n_start) * row_1.get(j, GaussRat(0))
            rhs = i_power(2 * basis[j].n_components()) * row_i.get(j, GaussRat(0))
            if lhs != rhs:
                phi_match = False
        if row_i:
            rows_i.append(row_i)
        if row_1:
            rows_1.append(row_1)

    def present(zeta, rows):
        res = rref_rank(SparseMatrix([dict(r) for r in rows], len(basis)))
        return QuotientPresentation(
            zeta=zeta,
            truncation=truncation,
            basis=tuple(basis),
            matrix=tuple(tuple(sorted(r.items())) for r in rows),
            dimension=len(basis) - res.rank,
            relations_used=len(rows),
            relations_dropped=dropped,
        )

    return QuotientComparison(
        at_minus_i=present(MINUS_I_UNIT, rows_i),
        at_minus_one=present(MINUS_ONE_UNIT, rows_1),
        phi_rows_match=phi_match,
    )
