"""Link diagrams with exact rational coordinates on the disk, torus and
once-punctured torus.

Components are closed polylines in the universal cover Q^2: the last vertex
must equal the first up to an integer translation, and that translation is the
component's homology class.  All crossings are computed as exact segment
intersections (against integer translates on the torus), so the combinatorics
of a diagram are always derived from its geometry, never hand-entered.

Over/under at a crossing is decided by per-segment levels (a component's
single `level` is the common level of all its segments); crossings between
equal-level segments of one component are resolved by explicit overrides keyed
by the crossing's surface point, which survive smoothing surgery.

The resolution skeleton built here (ports, arcs, integer class and winding
accumulators) is the input to the state-sum kernels in `kbsm.statesum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import geom
from .geom import Pt, frac_pt, floor_pt
from .homology import Lattice

__all__ = [
    "DiagramError",
    "Surface",
    "Diagram",
    "OrientedDiagram",
    "SimpleMulticurve",
    "build_diagram",
    "resolve",
    "triviality",
    "orient_data",
    "stack",
    "canonical_multicurve",
    "euler_parity_check",
    "smooth_crossing",
    "realize_multicurve",
    "diagram_to_json",
    "diagram_from_json",
]


class DiagramError(ValueError):
    """Invalid diagram geometry or unresolved crossing data."""


DISK = "disk"
TORUS = "torus"
PUNCTURED_TORUS = "punctured_torus"
_KINDS = (DISK, TORUS, PUNCTURED_TORUS)


@dataclass(frozen=True)
class Surface:
    kind: str
    puncture: Pt | None = None
    cut_dir: tuple[int, int] = (1, 0)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DiagramError(f"unknown surface kind {self.kind!r}")
        if self.kind == PUNCTURED_TORUS:
            if self.puncture is None:
                raise DiagramError("punctured torus needs a puncture point")
            object.__setattr__(
                self, "puncture", (Fraction(self.puncture[0]), Fraction(self.puncture[1]))
            )
            geom.unimodular_to_x(self.cut_dir)  # validates primitivity
        elif self.puncture is not None:
            raise DiagramError(f"{self.kind} has no puncture")

    @property
    def rank(self) -> int:
        return 0 if self.kind == DISK else 2

    def lattice(self) -> Lattice:
        return Lattice.trivial() if self.kind == DISK else Lattice.symplectic(1)

    @property
    def is_planar(self) -> bool:
        return self.kind == DISK


@dataclass(frozen=True)
class Component:
    vertices: tuple[Pt, ...]
    seg_levels: tuple[Fraction, ...]
    class_vec: tuple[int, ...]

    @property
    def nseg(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Crossing:
    a: tuple[int, int, Fraction]  # (component, segment, parameter), a < b
    b: tuple[int, int, Fraction]
    pos_a: Pt  # position on a's own cover lift
    pos_b: Pt
    point: Pt  # surface point (mod 1 on torus kinds)
    dir_a: tuple[int, int]  # primitive traversal direction of the segment
    dir_b: tuple[int, int]
    over_is_a: bool

    @property
    def dir_over(self) -> tuple[int, int]:
        return self.dir_a if self.over_is_a else self.dir_b

    @property
    def dir_under(self) -> tuple[int, int]:
        return self.dir_b if self.over_is_a else self.dir_a

    @property
    def comp_over(self) -> int:
        return self.a[0] if self.over_is_a else self.b[0]

    @property
    def comp_under(self) -> int:
        return self.b[0] if self.over_is_a else self.a[0]

    @property
    def sigma(self) -> int:
        """Sign of det[dir_over, dir_under] for the traversal directions."""
        d = self.dir_over[0] * self.dir_under[1] - self.dir_over[1] * self.dir_under[0]
        return 1 if d > 0 else -1


@dataclass
class Skeleton:
    """Port/arc data driving state resolution.

    Ports of crossing k are 4k+0 (over in), 4k+1 (over out), 4k+2 (under in),
    4k+3 (under out), in/out relative to the stored traversal direction.
    The positive smoothing joins over and under half-edges whose outward
    directions have negative determinant; with that convention the Seifert
    smoothing of a positively signed crossing is the positive one.
    """

    ncross: int
    pair_plus: list[int]
    pair_minus: list[int]
    port_arc: list[int]
    port_end: list[int]
    arc_ports: list[tuple[int, int]]
    arc_comp: list[int]
    arc_dx: list[int]
    arc_dy: list[int]
    arc_anchor0: list[tuple[int, int]]
    arc_anchor1: list[tuple[int, int]]
    arc_w: list[int]
    arc_r: list[int]
    arc_polyline: list[tuple[Pt, ...]]
    free_comps: list[int]


class Diagram:
    """Immutable diagram; construct through `build_diagram`."""

    def __init__(
        self,
        surface: Surface,
        components: tuple[Component, ...],
        crossings: tuple[Crossing, ...],
        skeleton: Skeleton,
        comp_winding: tuple[int | None, ...],
    ):
        self.surface = surface
        self.components = components
        self.crossings = crossings
        self.skeleton = skeleton
        self.comp_winding = comp_winding

    @property
    def ncross(self) -> int:
        return len(self.crossings)

    @property
    def ncomp(self) -> int:
        return len(self.components)

    def class_vec(self, ci: int) -> tuple[int, ...]:
        return self.components[ci].class_vec

    def total_class_mod2(self) -> tuple[int, ...]:
        rank = self.surface.rank
        total = [0] * rank
        for comp in self.components:
            for i, x in enumerate(comp.class_vec):
                total[i] += x
        return tuple(x & 1 for x in total)

    def __repr__(self) -> str:
        return (
            f"Diagram({self.surface.kind}, {self.ncomp} components, "
            f"{self.ncross} crossings)"
        )


@dataclass(frozen=True)
class OrientedDiagram:
    base: Diagram
    direction: tuple[int, ...]

    def __post_init__(self):
        if len(self.direction) != self.base.ncomp:
            raise DiagramError("orientation length must match component count")
        if any(d not in (1, -1) for d in self.direction):
            raise DiagramError("orientations are +1 or -1")


# ---------------------------------------------------------------------------
# Simple multicurves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleMulticurve:
    """Isotopy class of a crossingless diagram without trivial components:
    slope parts (primitive normalized class -> multiplicity) plus a count of
    puncture-parallel components."""

    slopes: tuple[tuple[tuple[int, int], int], ...] = ()
    boundary_parallel: int = 0

    def __post_init__(self):
        object.__setattr__(self, "slopes", tuple(sorted(self.slopes)))

    @property
    def is_empty(self) -> bool:
        return not self.slopes and self.boundary_parallel == 0

    def n_components(self) -> int:
        return sum(m for _, m in self.slopes) + self.boundary_parallel

    def class_vec(self, rank: int) -> tuple[int, ...]:
        total = [0] * rank
        for (p, q), m in self.slopes:
            total[0] += m * p
            total[1] += m * q
        return tuple(total)

    def class_mod2(self, rank: int) -> tuple[int, ...]:
        return tuple(x & 1 for x in self.class_vec(rank))

    def sort_key(self):
        return (self.slopes, self.boundary_parallel)


EMPTY_MULTICURVE = SimpleMulticurve()


def make_multicurve(
    surface: Surface, parts: dict[tuple[int, int], int], boundary_parallel: int = 0
) -> SimpleMulticurve:
    """Validated multicurve for a surface."""
    clean: dict[tuple[int, int], int] = {}
    for slope, m in parts.items():
        if m < 0:
            raise DiagramError("negative multiplicity")
        if m:
            try:
                key = geom.normalize_slope(slope)
            except ValueError as e:
                raise DiagramError(str(e)) from None
            clean[key] = clean.get(key, 0) + m
    if surface.kind == DISK and (clean or boundary_parallel):
        raise DiagramError("the disk carries only the empty multicurve")
    if surface.kind != PUNCTURED_TORUS and boundary_parallel:
        raise DiagramError("boundary-parallel parts need a puncture")
    if len(clean) > 1:
        raise DiagramError(f"disjoint essential curves must share a slope: {sorted(clean)}")
    return SimpleMulticurve(tuple(sorted(clean.items())), boundary_parallel)


# ---------------------------------------------------------------------------
# Building and validating diagrams
# ---------------------------------------------------------------------------


def _normalize_component(spec, surface: Surface) -> Component:
    vertices, levels = spec
    pts = tuple((Fraction(x), Fraction(y)) for x, y in vertices)
    if len(pts) < 2:
        raise DiagramError("a component needs at least one segment")
    closure = geom.sub(pts[-1], pts[0])
    if surface.kind == DISK:
        if closure != (0, 0):
            raise DiagramError("disk components must close up exactly")
        class_vec: tuple[int, ...] = ()
    else:
        if closure[0].denominator != 1 or closure[1].denominator != 1:
            raise DiagramError(
                f"component must close up to an integer translation, got {closure}"
            )
        class_vec = (int(closure[0]), int(closure[1]))
    for a, b in zip(pts, pts[1:]):
        if a == b:
            raise DiagramError("zero-length segment")
    nseg = len(pts) - 1
    if isinstance(levels, (list, tuple)):
        if len(levels) != nseg:
            raise DiagramError("segment_levels length must match segment count")
        seg_levels = tuple(Fraction(v) for v in levels)
    else:
        seg_levels = (Fraction(levels),) * nseg
    return Component(pts, seg_levels, class_vec)


def _collect_crossings(surface: Surface, comps: tuple[Component, ...]):
    planar = surface.kind == DISK
    raw = []
    n = len(comps)
    fsegs = [
        [geom.float_seg(c.vertices[s], c.vertices[s + 1]) for s in range(c.nseg)]
        for c in comps
    ]
    fbox = [
        [
            (min(f[0], f[2]), max(f[0], f[2]), min(f[1], f[3]), max(f[1], f[3]))
            for f in row
        ]
        for row in fsegs
    ]
    # common integer scaling: exact pair tests run over ints
    scale = 1
    for c in comps:
        for x, y in c.vertices:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
            scale = scale * y.denominator // math.gcd(scale, y.denominator)
    iverts = [
        [(int(x * scale), int(y * scale)) for x, y in c.vertices] for c in comps
    ]
    margin = 1e-7
    for ci in range(n):
        ca = comps[ci]
        for cj in range(ci, n):
            cb = comps[cj]
            for si in range(ca.nseg):
                a0, a1 = ca.vertices[si], ca.vertices[si + 1]
                ia0, ia1 = iverts[ci][si], iverts[ci][si + 1]
                fa = fsegs[ci][si]
                axlo, axhi, aylo, ayhi = fbox[ci][si]
                sj_start = si if ci == cj else 0
                for sj in range(sj_start, cb.nseg):
                    same_seg = ci == cj and si == sj
                    b0, b1 = cb.vertices[sj], cb.vertices[sj + 1]
                    ib0, ib1 = iverts[cj][sj], iverts[cj][sj + 1]
                    fb = fsegs[cj][sj]
                    bxlo, bxhi, bylo, byhi = fbox[cj][sj]
                    if planar:
                        translates = [] if same_seg else [(0, 0)]
                    else:
                        translates = []
                        vx_lo = math.floor(axlo - bxhi)
                        vx_hi = math.ceil(axhi - bxlo)
                        vy_lo = math.floor(aylo - byhi)
                        vy_hi = math.ceil(ayhi - bylo)
                        for vx in range(vx_lo, vx_hi + 1):
                            if bxlo + vx > axhi + margin or bxhi + vx < axlo - margin:
                                continue
                            for vy in range(vy_lo, vy_hi + 1):
                                if bylo + vy > ayhi + margin or byhi + vy < aylo - margin:
                                    continue
                                translates.append((vx, vy))
                    for v in translates:
                        if same_seg and v <= (0, 0):
                            continue
                        if geom.fast_disjoint(fa, fb, v[0], v[1]):
                            continue
                        kind, t, u = geom.seg_intersect_int(
                            ia0,
                            ia1,
                            (ib0[0] + v[0] * scale, ib0[1] + v[1] * scale),
                            (ib1[0] + v[0] * scale, ib1[1] + v[1] * scale),
                        )
                        if kind == geom.NONE:
                            continue
                        if kind == geom.OVERLAP:
                            raise DiagramError(
                                f"segments overlap: component {ci} segment {si} and "
                                f"component {cj} segment {sj} (translate {v})"
                            )
                        if kind == geom.TOUCH:
                            if _allowed_touch(ci, si, t, cj, sj, u, comps):
                                continue
                            raise DiagramError(
                                f"non-transverse touch between component {ci} segment "
                                f"{si} and component {cj} segment {sj} at t={t}, u={u}"
                            )
                        strand_a = (ci, si, t)
                        strand_b = (cj, sj, u)
                        pa = geom.lerp(a0, a1, t)
                        pb = geom.lerp(b0, b1, u)
                        if strand_b < strand_a:
                            strand_a, strand_b = strand_b, strand_a
                            pa, pb = pb, pa
                        raw.append((strand_a, strand_b, pa, pb))
    raw.sort(key=lambda r: (r[0], r[1]))
    return raw


def _allowed_touch(ci, si, t, cj, sj, u, comps) -> bool:
    if ci != cj:
        return False
    if t not in (0, 1) or u not in (0, 1):
        return False
    nseg = comps[ci].nseg
    va = si + int(t)
    vb = sj + int(u)
    return va == vb or {va, vb} == {0, nseg}


def _segment_dir(comp: Component, seg: int) -> tuple[int, int]:
    return geom.primitive_dir(geom.sub(comp.vertices[seg + 1], comp.vertices[seg]))


def build_diagram(
    surface: Surface,
    components,
    self_overrides=None,
    point_overrides: dict[Pt, tuple[int, int]] | None = None,
    auto_self_over=None,
) -> Diagram:
    """Build and fully validate a diagram.

    `components` is a list of (vertices, level) or (vertices, [segment
    levels]).  `self_overrides` follows the JSON convention: entries
    {"component": i, "crossing_index": k, "over": bool} indexed over the
    component's level-ambiguous self-crossings in canonical order.
    `point_overrides` maps a crossing's surface point to the undirected
    primitive direction of the over strand (the internal convention used by
    surgery and handle slides).
    """
    comps = tuple(_normalize_component(spec, surface) for spec in components)

    if surface.kind == PUNCTURED_TORUS:
        _check_puncture_clear(surface, comps)

    raw = _collect_crossings(surface, comps)

    # triple points / tangencies at equal surface points
    seen: dict[Pt, tuple] = {}
    planar = surface.kind == DISK
    for strand_a, strand_b, pa, pb in raw:
        point = pa if planar else frac_pt(pa)
        if point in seen:
            raise DiagramError(f"multiple crossings at surface point {point}")
        seen[point] = strand_a

    # resolve over/under
    overrides_by_point = dict(point_overrides or {})
    ambiguous: dict[int, list[int]] = {}
    crossings: list[Crossing] = []
    for idx, (strand_a, strand_b, pa, pb) in enumerate(raw):
        ci, si, _ = strand_a
        cj, sj, _ = strand_b
        la = comps[ci].seg_levels[si]
        lb = comps[cj].seg_levels[sj]
        dir_a = _segment_dir(comps[ci], si)
        dir_b = _segment_dir(comps[cj], sj)
        point = pa if planar else frac_pt(pa)
        if la != lb:
            over_is_a = la > lb
        else:
            key_a = geom.line_key((Fraction(dir_a[0]), Fraction(dir_a[1])))
            key_b = geom.line_key((Fraction(dir_b[0]), Fraction(dir_b[1])))
            if key_a == key_b:
                raise DiagramError(f"parallel strands cannot cross at {point}")
            if point in overrides_by_point:
                over_key = overrides_by_point[point]
                if over_key == key_a:
                    over_is_a = True
                elif over_key == key_b:
                    over_is_a = False
                else:
                    raise DiagramError(
                        f"override at {point} names direction {over_key}, "
                        f"strands run along {key_a} and {key_b}"
                    )
            elif ci != cj:
                raise DiagramError(
                    f"components {ci} and {cj} cross at equal level {la}; "
                    "give them distinct levels"
                )
            else:
                ambiguous.setdefault(ci, []).append(idx)
                over_is_a = True  # placeholder, patched below
        crossings.append(
            Crossing(strand_a, strand_b, pa, pb, point, dir_a, dir_b, over_is_a)
        )

    if ambiguous:
        spec_map: dict[tuple[int, int], bool] = {}
        for entry in self_overrides or ():
            spec_map[(int(entry["component"]), int(entry["crossing_index"]))] = bool(
                entry["over"]
            )
        for ci, idxs in ambiguous.items():
            for k, idx in enumerate(idxs):
                if (ci, k) in spec_map:
                    flag = spec_map[(ci, k)]
                elif auto_self_over is not None:
                    flag = bool(auto_self_over(ci, k, crossings[idx]))
                else:
                    raise DiagramError(
                        f"self-crossing {k} of component {ci} at "
                        f"{crossings[idx].point} needs an over/under override"
                    )
                c = crossings[idx]
                crossings[idx] = Crossing(
                    c.a, c.b, c.pos_a, c.pos_b, c.point, c.dir_a, c.dir_b, flag
                )
        extra = set(spec_map) - {
            (ci, k) for ci, idxs in ambiguous.items() for k in range(len(idxs))
        }
        if extra:
            raise DiagramError(f"overrides for nonexistent self-crossings: {sorted(extra)}")

    skeleton = _build_skeleton(surface, comps, tuple(crossings))
    comp_winding = _component_windings(surface, comps, skeleton)
    return Diagram(surface, comps, tuple(crossings), skeleton, comp_winding)


def _check_puncture_clear(surface: Surface, comps) -> None:
    p = surface.puncture
    for ci, comp in enumerate(comps):
        for si in range(comp.nseg):
            a0, a1 = comp.vertices[si], comp.vertices[si + 1]
            vx_lo = math.ceil(min(a0[0], a1[0]) - p[0])
            vx_hi = math.floor(max(a0[0], a1[0]) - p[0])
            vy_lo = math.ceil(min(a0[1], a1[1]) - p[1])
            vy_hi = math.floor(max(a0[1], a1[1]) - p[1])
            for vx in range(vx_lo, vx_hi + 1):
                for vy in range(vy_lo, vy_hi + 1):
                    q = (p[0] + vx, p[1] + vy)
                    if geom.point_on_segment(q, a0, a1):
                        raise DiagramError(
                            f"puncture lies on component {ci} segment {si}"
                        )


def _build_skeleton(surface, comps, crossings) -> Skeleton:
    ncross = len(crossings)
    punctured = surface.kind == PUNCTURED_TORUS
    if punctured:
        u_mat = geom.unimodular_to_x(surface.cut_dir)
        p_t = geom.apply_mat(u_mat, surface.puncture)

    pair_plus = [0] * (4 * ncross)
    pair_minus = [0] * (4 * ncross)
    for k, c in enumerate(crossings):
        if c.sigma > 0:
            plus_pairs = ((0, 3), (1, 2))
            minus_pairs = ((0, 2), (1, 3))
        else:
            plus_pairs = ((0, 2), (1, 3))
            minus_pairs = ((0, 3), (1, 2))
        for x, y in plus_pairs:
            pair_plus[4 * k + x] = 4 * k + y
            pair_plus[4 * k + y] = 4 * k + x
        for x, y in minus_pairs:
            pair_minus[4 * k + x] = 4 * k + y
            pair_minus[4 * k + y] = 4 * k + x

    # events per component
    events: dict[int, list] = {}
    for k, c in enumerate(crossings):
        for slot, (ci, si, t) in (("a", c.a), ("b", c.b)):
            events.setdefault(ci, []).append((si, t, k, slot))
    for evs in events.values():
        evs.sort(key=lambda e: (e[0], e[1]))

    port_arc = [-1] * (4 * ncross)
    port_end = [-1] * (4 * ncross)
    arc_ports: list[tuple[int, int]] = []
    arc_comp: list[int] = []
    arc_dx: list[int] = []
    arc_dy: list[int] = []
    arc_anchor0: list[tuple[int, int]] = []
    arc_anchor1: list[tuple[int, int]] = []
    arc_w: list[int] = []
    arc_r: list[int] = []
    arc_polyline: list[tuple[Pt, ...]] = []

    def event_pos(ci, ev) -> Pt:
        si, t, k, slot = ev
        c = crossings[k]
        return c.pos_a if slot == "a" else c.pos_b

    def event_ports(ev) -> tuple[int, int]:
        si, t, k, slot = ev
        c = crossings[k]
        is_over = c.over_is_a == (slot == "a")
        base = 4 * k + (0 if is_over else 2)
        return base, base + 1  # (in, out)

    for ci, evs in sorted(events.items()):
        comp = comps[ci]
        class_v = comp.class_vec
        cls = (Fraction(class_v[0]), Fraction(class_v[1])) if class_v else (Fraction(0), Fraction(0))
        for idx, ev in enumerate(evs):
            nxt = evs[(idx + 1) % len(evs)]
            wrap = idx + 1 == len(evs)
            start = event_pos(ci, ev)
            end = event_pos(ci, nxt)
            mids: list[Pt] = []
            si, ti = ev[0], ev[1]
            sj, tj = nxt[0], nxt[1]
            if not wrap:
                for m in range(si + 1, sj + 1):
                    mids.append(comp.vertices[m])
            else:
                for m in range(si + 1, comp.nseg + 1):
                    mids.append(comp.vertices[m])
                for m in range(1, sj + 1):
                    mids.append(geom.add(comp.vertices[m], cls))
                end = geom.add(end, cls)
            poly = (start, *mids, end)
            # drop consecutive duplicates from events at segment joints
            cleaned = [poly[0]]
            for q in poly[1:]:
                if q != cleaned[-1]:
                    cleaned.append(q)
            poly = tuple(cleaned)

            start_port = event_ports(ev)[1]
            end_port = event_ports(nxt)[0]
            arc_id = len(arc_ports)
            port_arc[start_port] = arc_id
            port_end[start_port] = 0
            port_arc[end_port] = arc_id
            port_end[end_port] = 1
            arc_ports.append((start_port, end_port))
            arc_comp.append(ci)

            if surface.kind == DISK:
                arc_dx.append(0)
                arc_dy.append(0)
                arc_anchor0.append((0, 0))
                arc_anchor1.append((0, 0))
            else:
                f_start = frac_pt(start)
                f_end = frac_pt(end)
                a0 = (int(start[0] - f_start[0]), int(start[1] - f_start[1]))
                a1 = (int(end[0] - f_end[0]), int(end[1] - f_end[1]))
                arc_anchor0.append(a0)
                arc_anchor1.append(a1)
                d0 = floor_pt(start)
                d1 = floor_pt(end)
                arc_dx.append(d1[0] - d0[0])
                arc_dy.append(d1[1] - d0[1])
            if punctured:
                tpoly = [geom.apply_mat(u_mat, q) for q in poly]
                w, r = geom.polyline_winding_data(tpoly, p_t)
                arc_w.append(w)
                arc_r.append(r)
            else:
                arc_w.append(0)
                arc_r.append(0)
            arc_polyline.append(poly)

    free_comps = [ci for ci in range(len(comps)) if ci not in events]
    return Skeleton(
        ncross=ncross,
        pair_plus=pair_plus,
        pair_minus=pair_minus,
        port_arc=port_arc,
        port_end=port_end,
        arc_ports=arc_ports,
        arc_comp=arc_comp,
        arc_dx=arc_dx,
        arc_dy=arc_dy,
        arc_anchor0=arc_anchor0,
        arc_anchor1=arc_anchor1,
        arc_w=arc_w,
        arc_r=arc_r,
        arc_polyline=arc_polyline,
        free_comps=free_comps,
    )


def _component_windings(surface, comps, skeleton) -> tuple[int | None, ...]:
    if surface.kind != PUNCTURED_TORUS:
        return tuple(None for _ in comps)
    u_mat = geom.unimodular_to_x(surface.cut_dir)
    p_t = geom.apply_mat(u_mat, surface.puncture)
    out: list[int | None] = []
    for comp in comps:
        if comp.class_vec != (0, 0):
            out.append(None)
            continue
        tpoly = [geom.apply_mat(u_mat, q) for q in comp.vertices]
        w, r = geom.polyline_winding_data(tpoly, p_t)
        if r != 0:
            raise DiagramError("closed null component with nonzero row count")
        out.append(w)
    return tuple(out)


# ---------------------------------------------------------------------------
# State resolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedCycle:
    class_vec: tuple[int, ...]
    winding: int | None
    ports: tuple[int, ...]  # empty for free components
    from_free: int | None = None

    def is_trivial(self, surface: Surface) -> bool:
        return triviality(self, surface)


@dataclass(frozen=True)
class StateResolution:
    cycles: tuple[ResolvedCycle, ...]
    c: int
    t: int
    s_prime: SimpleMulticurve
    sbar_class: tuple[int, ...]
    chords: tuple[tuple[int, int, int], ...]  # (crossing, from port, to port)


def triviality(component, surface: Surface) -> bool:
    """Does a crossingless component bound a disk in the surface?"""
    if surface.kind == DISK:
        return True
    if surface.kind == TORUS:
        return all(x == 0 for x in component.class_vec)
    return all(x == 0 for x in component.class_vec) and component.winding == 0


def _state_pairing(skel: Skeleton, state) -> list[int]:
    pair = [0] * (4 * skel.ncross)
    for k, choice in enumerate(state):
        src = skel.pair_plus if choice == 1 else skel.pair_minus
        for j in range(4):
            pair[4 * k + j] = src[4 * k + j]
    return pair


def resolve(d: Diagram, state, want_chords: bool = False) -> StateResolution:
    """Replace every crossing by its chosen smoothing.

    Returns the resolved components with exact class vectors (and winding
    about the puncture for null classes), the smoothing sum c, the count t of
    disk-bounding components, and the canonical multicurve of the rest.
    """
    skel = d.skeleton
    state = tuple(state)
    if len(state) != skel.ncross:
        raise DiagramError("state length must equal crossing count")
    if any(x not in (1, -1) for x in state):
        raise DiagramError("state entries are +1 or -1")
    punctured = d.surface.kind == PUNCTURED_TORUS
    planar = d.surface.kind == DISK

    pair = _state_pairing(skel, state)
    nports = 4 * skel.ncross
    visited = [False] * nports
    cycles: list[ResolvedCycle] = []
    chords: list[tuple[int, int, int]] = []
    sbar = [0] * d.surface.rank

    for p0 in range(nports):
        if visited[p0] or skel.port_arc[p0] < 0:
            continue
        # start on the arc attached at p0, entering at that end
        total_dx = 0
        total_dy = 0
        total_w = 0
        vx = 0
        vy = 0
        ports: list[int] = []
        port = p0
        while True:
            visited[port] = True
            ports.append(port)
            arc = skel.port_arc[port]
            entry_end = skel.port_end[port]
            exit_end = 1 - entry_end
            sign = 1 if entry_end == 0 else -1
            total_dx += sign * skel.arc_dx[arc]
            total_dy += sign * skel.arc_dy[arc]
            if punctured:
                total_w += sign * (skel.arc_w[arc] + vx * skel.arc_r[arc])
            exit_port = skel.arc_ports[arc][exit_end]
            visited[exit_port] = True
            ports.append(exit_port)
            nxt = pair[exit_port]
            if want_chords:
                chords.append((exit_port // 4, exit_port, nxt))
            if nxt == p0:
                break
            next_arc = skel.port_arc[nxt]
            next_end = skel.port_end[nxt]
            a_exit = skel.arc_anchor1[arc] if exit_end == 1 else skel.arc_anchor0[arc]
            a_next = (
                skel.arc_anchor1[next_arc]
                if next_end == 1
                else skel.arc_anchor0[next_arc]
            )
            vx += a_exit[0] - a_next[0]
            vy += a_exit[1] - a_next[1]
            port = nxt
        if planar:
            cls: tuple[int, ...] = ()
            wind = None
        else:
            cls = (total_dx, total_dy)
            wind = total_w if punctured and cls == (0, 0) else None
        cycles.append(ResolvedCycle(cls, wind, tuple(ports)))

    for ci in skel.free_comps:
        cycles.append(
            ResolvedCycle(
                d.components[ci].class_vec, d.comp_winding[ci], (), from_free=ci
            )
        )

    for cyc in cycles:
        for i, x in enumerate(cyc.class_vec):
            sbar[i] += x

    t = 0
    parts: dict[tuple[int, int], int] = {}
    bp = 0
    for cyc in cycles:
        if triviality(cyc, d.surface):
            t += 1
        elif not planar and all(x == 0 for x in cyc.class_vec):
            if abs(cyc.winding) != 1:
                raise DiagramError(
                    f"embedded null component with winding {cyc.winding}"
                )
            bp += 1
        else:
            slope = geom.normalize_slope(cyc.class_vec)
            parts[slope] = parts.get(slope, 0) + 1
    s_prime = make_multicurve(d.surface, parts, bp)

    return StateResolution(
        cycles=tuple(cycles),
        c=sum(state),
        t=t,
        s_prime=s_prime,
        sbar_class=tuple(sbar),
        chords=tuple(chords),
    )


# ---------------------------------------------------------------------------
# Orientations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientData:
    writhe: int
    xi: tuple[int, ...]
    signs: tuple[int, ...]
    seifert_choice: tuple[int, ...]


def orient_data(od: OrientedDiagram) -> OrientData:
    """Writhe, crossing signs, the Seifert state and its cycle class.

    The crossing sign is det[over direction, under direction] for the oriented
    strands; the Seifert smoothing of a crossing is the positive smoothing
    exactly when its sign is positive.
    """
    d = od.base
    signs = []
    seif = []
    for c in d.crossings:
        eps = od.direction[c.comp_over] * od.direction[c.comp_under]
        sign = c.sigma * eps
        signs.append(sign)
        seif.append(sign)
    xi = [0] * d.surface.rank
    for ci, comp in enumerate(d.components):
        for i, x in enumerate(comp.class_vec):
            xi[i] += od.direction[ci] * x
    return OrientData(
        writhe=sum(signs),
        xi=tuple(xi),
        signs=tuple(signs),
        seifert_choice=tuple(seif),
    )


def euler_parity_check(d: Diagram, od: OrientedDiagram, state) -> bool:
    """Parity of the state surface: components + same-direction bands + Euler
    characteristic is even, with the band count cross-checked against the
    Seifert-pairing formula."""
    data = orient_data(od)
    res = resolve(d, state, want_chords=True)
    n_state = len(res.cycles)
    chi = d.ncomp - d.ncross
    m = _same_direction_bands(d, data, state, res)
    parity_ok = (n_state + m + chi) % 2 == 0

    ss = sum(1 for k in range(d.ncross) if state[k] == data.seifert_choice[k])
    lat = d.surface.lattice()
    pairing = lat.omega(data.xi, res.sbar_class) if d.surface.rank else 0
    if pairing % 2:
        raise DiagramError("xi pairing with the state class must be even")
    cross_ok = (d.ncross + ss + pairing // 2 - m) % 2 == 0
    return parity_ok and cross_ok


def _port_dir(c: Crossing, j: int) -> tuple[int, int]:
    """Outward direction of port j at crossing c (traversal convention)."""
    d = c.dir_over if j < 2 else c.dir_under
    sign = -1 if j % 2 == 0 else 1  # "in" ports point back along the strand
    return (sign * d[0], sign * d[1])


def _same_direction_bands(d, data: OrientData, state, res: StateResolution) -> int:
    # Flatten each non-Seifert band into an abstract rectangle: attached sides
    # lie on the two strands, free sides are the smoothing chords, and a chord
    # points "up" when traversed from its over-strand end to its under-strand
    # end.  The band's sides have the same direction iff both chords point up
    # or both point down.  (The drawn quadrilateral self-intersects at the
    # crossing, so the planar picture cannot be read off directly.)
    by_crossing: dict[int, list[tuple[int, int]]] = {}
    for k, p, q in res.chords:
        by_crossing.setdefault(k, []).append((p, q))
    m = 0
    for k, chords in by_crossing.items():
        if state[k] == data.seifert_choice[k]:
            continue
        (p1, _q1), (p2, _q2) = chords
        up1 = p1 % 4 < 2  # chord 1 leaves from an over port
        up2 = p2 % 4 < 2
        if up1 == up2:
            m += 1
    return m


# ---------------------------------------------------------------------------
# Stacking, multicurves, surgery
# ---------------------------------------------------------------------------


def _level_span(d: Diagram) -> tuple[Fraction, Fraction]:
    levels = [lv for comp in d.components for lv in comp.seg_levels]
    if not levels:
        return (Fraction(0), Fraction(0))
    return (min(levels), max(levels))


def _diagram_point_overrides(d: Diagram) -> dict[Pt, tuple[int, int]]:
    out = {}
    for c in d.crossings:
        ci, si, _ = c.a
        cj, sj, _ = c.b
        if d.components[ci].seg_levels[si] == d.components[cj].seg_levels[sj]:
            over_dir = c.dir_a if c.over_is_a else c.dir_b
            out[c.point] = geom.line_key((Fraction(over_dir[0]), Fraction(over_dir[1])))
    return out


def _translated_specs(d: Diagram, offset: Pt):
    specs = []
    for comp in d.components:
        verts = [geom.add(v, offset) for v in comp.vertices]
        specs.append((verts, list(comp.seg_levels)))
    return specs


def _shift_levels(specs, delta: Fraction):
    return [(verts, [lv + delta for lv in levels]) for verts, levels in specs]


def _puncture_clearance2(d: Diagram) -> Fraction | None:
    if d.surface.kind != PUNCTURED_TORUS:
        return None
    p = d.surface.puncture
    best = None
    for comp in d.components:
        for si in range(comp.nseg):
            a0, a1 = comp.vertices[si], comp.vertices[si + 1]
            vx_lo = math.ceil(min(a0[0], a1[0]) - p[0]) - 1
            vx_hi = math.floor(max(a0[0], a1[0]) - p[0]) + 1
            vy_lo = math.ceil(min(a0[1], a1[1]) - p[1]) - 1
            vy_hi = math.floor(max(a0[1], a1[1]) - p[1]) + 1
            for vx in range(vx_lo, vx_hi + 1):
                for vy in range(vy_lo, vy_hi + 1):
                    q = (p[0] + vx, p[1] + vy)
                    d2 = geom.dist2_point_segment(q, a0, a1)
                    if best is None or d2 < best:
                        best = d2
    return best


STACK_ATTEMPTS = 40


def stack(top: Diagram, bottom: Diagram) -> Diagram:
    """Union with every segment of `top` above every segment of `bottom`.

    The top diagram is translated by a deterministic schedule of small
    rational offsets until the union is in general position; on the punctured
    torus the offsets are kept below the top diagram's clearance from the
    puncture so the move is an isotopy.
    """
    if top.surface != bottom.surface:
        raise DiagramError("stack requires a common surface")
    lo_t, _ = _level_span(top)
    _, hi_b = _level_span(bottom)
    delta = hi_b + 1 - lo_t

    h = Fraction(1, 257)
    d2 = _puncture_clearance2(top)
    if d2 is not None:
        bound = d2 / (100 * (1 + d2))
        h = min(h, bound)
    last_err: Exception | None = None
    for attempt in range(STACK_ATTEMPTS):
        if attempt == 0:
            offset = (Fraction(0), Fraction(0))
        else:
            offset = (h * attempt / (attempt + 1), h * attempt / (2 * attempt + 1))
        specs = _shift_levels(_translated_specs(top, offset), delta)
        specs += _translated_specs(bottom, (Fraction(0), Fraction(0)))
        pov: dict[Pt, tuple[int, int]] = {}
        for pnt, key in _diagram_point_overrides(top).items():
            pov[frac_pt(geom.add(pnt, offset)) if top.surface.kind != DISK else geom.add(pnt, offset)] = key
        pov.update(_diagram_point_overrides(bottom))
        try:
            return build_diagram(top.surface, specs, point_overrides=pov)
        except DiagramError as e:
            last_err = e
    raise DiagramError(f"stacking failed after {STACK_ATTEMPTS} perturbations: {last_err}")


def canonical_multicurve(d: Diagram) -> SimpleMulticurve:
    """Isotopy class of a crossingless diagram with no trivial components."""
    if d.ncross:
        raise DiagramError("canonical form needs a crossingless diagram")
    parts: dict[tuple[int, int], int] = {}
    bp = 0
    for ci, comp in enumerate(d.components):
        cyc = ResolvedCycle(comp.class_vec, d.comp_winding[ci], ())
        if triviality(cyc, d.surface):
            raise DiagramError(f"component {ci} bounds a disk; remove trivial parts first")
        if d.surface.kind != DISK and comp.class_vec == (0, 0):
            bp += 1
        else:
            slope = geom.normalize_slope(comp.class_vec)
            parts[slope] = parts.get(slope, 0) + 1
    return make_multicurve(d.surface, parts, bp)


# -- canonical geometric realizations ---------------------------------------


def realize_multicurve(
    mc: SimpleMulticurve, surface: Surface, level=0, variant: int = 0
) -> Diagram:
    """A canonical crossingless diagram in the class of the multicurve.

    Slope parts become straight parallel lines; puncture-parallel parts become
    nested squares around the puncture.  `variant` shifts the offsets through
    a deterministic schedule (used to exercise representative independence).
    """
    last_err: Exception | None = None
    for attempt in range(12):
        try:
            return _realize_attempt(mc, surface, level, variant * 13 + attempt)
        except DiagramError as e:
            last_err = e
    raise DiagramError(f"multicurve realization failed: {last_err}")


def _realize_attempt(mc, surface, level, salt: int) -> Diagram:
    specs = []
    base = Fraction(1 + salt, 509 + 2 * salt)
    for (p, q), mult in mc.slopes:
        big = 521 * (p * p + q * q + 1) * (mult + 1)
        h = Fraction(1, big)
        for j in range(mult):
            off = (base - h * (j + 1) * q, base * 2 + h * (j + 1) * p)
            verts = [off, geom.add(off, (Fraction(p), Fraction(q)))]
            specs.append((verts, level))
    if mc.boundary_parallel:
        p = surface.puncture
        d2 = Fraction(1, 4)
        for verts, _ in specs:
            a0, a1 = verts
            for vx in range(-2, 3):
                for vy in range(-2, 3):
                    q2 = (p[0] + vx, p[1] + vy)
                    d2 = min(d2, geom.dist2_point_segment(q2, a0, a1))
        r0 = d2 / (4 * (1 + d2))
        for i in range(mc.boundary_parallel):
            r = r0 / (2**i) / (salt + 1)
            square = [
                (p[0] - r, p[1] - r),
                (p[0] + r, p[1] - r),
                (p[0] + r, p[1] + r),
                (p[0] - r, p[1] + r),
                (p[0] - r, p[1] - r),
            ]
            specs.append((square, level))
    return build_diagram(surface, specs)


def disjoint_union(a: Diagram, b: Diagram) -> Diagram:
    """Union of two diagrams assumed already in general position."""
    if a.surface != b.surface:
        raise DiagramError("union requires a common surface")
    specs = _translated_specs(a, (Fraction(0), Fraction(0)))
    specs += _translated_specs(b, (Fraction(0), Fraction(0)))
    pov = _diagram_point_overrides(a)
    pov.update(_diagram_point_overrides(b))
    return build_diagram(a.surface, specs, point_overrides=pov)


# -- smoothing surgery -------------------------------------------------------


def smooth_crossing(d: Diagram, k: int, choice: int) -> Diagram:
    """The diagram with crossing k replaced by its +1 or -1 smoothing.

    All other crossings keep their over/under data (levels are carried along
    on a per-segment basis and overrides are keyed by surface point).  The
    smoothing chords are shrunk through a deterministic schedule until the
    result validates.
    """
    if choice not in (1, -1):
        raise DiagramError("choice must be +1 or -1")
    c = d.crossings[k]
    skel = d.skeleton
    pairing = skel.pair_plus if choice == 1 else skel.pair_minus

    last_err: Exception | None = None
    for attempt in range(1, 9):
        eps = Fraction(1, 64 * 4**attempt)
        try:
            return _smooth_attempt(d, k, pairing, eps)
        except DiagramError as e:
            last_err = e
    raise DiagramError(f"smoothing surgery failed: {last_err}")


def _smooth_attempt(d: Diagram, k: int, pairing, eps: Fraction) -> Diagram:
    c = d.crossings[k]
    comps = d.components

    # stub points on each strand: parameters eps before/after the crossing
    strands = {"a": c.a, "b": c.b}
    stubs: dict[tuple[str, int], Pt] = {}
    for slot, (ci, si, t) in strands.items():
        a0 = comps[ci].vertices[si]
        a1 = comps[ci].vertices[si + 1]
        for side, tt in ((0, t - eps), (1, t + eps)):
            if not (0 < tt < 1):
                raise DiagramError("stub parameter escapes the segment")
            stubs[(slot, side)] = geom.lerp(a0, a1, tt)

    over_slot = "a" if c.over_is_a else "b"

    def stub_port(slot: str, side: int) -> int:
        base = 0 if slot == over_slot else 2
        return 4 * k + base + side

    port_stub = {
        stub_port(slot, side): (slot, side) for slot in ("a", "b") for side in (0, 1)
    }
    strand_pos = {"a": c.pos_a, "b": c.pos_b}

    by_comp: dict[int, list[tuple[str, int, Fraction]]] = {}
    for slot, (ci, si, t) in strands.items():
        by_comp.setdefault(ci, []).append((slot, si, t))

    new_specs = []
    pov = _diagram_point_overrides(d)
    pov.pop(c.point, None)
    for ci, comp in enumerate(comps):
        if ci not in by_comp:
            new_specs.append((list(comp.vertices), list(comp.seg_levels)))

    # Pieces of the cut components: the forward run from a cut's after-stub to
    # the next cut's before-stub.  pts[i] -> pts[i+1] is a segment at
    # levels[i].  Each piece records the crossing-lift anchor of both ends so
    # the stitching below can track cover shifts exactly.
    pieces: dict[str, dict] = {}
    stub_owner: dict[tuple[str, int], tuple[str, str]] = {}
    for ci, cuts in by_comp.items():
        comp = comps[ci]
        cuts = sorted(cuts, key=lambda e: (e[1], e[2]))
        nseg = comp.nseg
        cls = (
            (Fraction(comp.class_vec[0]), Fraction(comp.class_vec[1]))
            if comp.class_vec
            else (Fraction(0), Fraction(0))
        )
        for idx, (slot, si, t) in enumerate(cuts):
            nslot, nsi, nt = cuts[(idx + 1) % len(cuts)]
            wrap = idx + 1 == len(cuts)
            pts = [stubs[(slot, 1)]]
            if not wrap:
                for m in range(si + 1, nsi + 1):
                    pts.append(comp.vertices[m])
                pts.append(stubs[(nslot, 0)])
                n_full = nsi - si
                end_anchor = strand_pos[nslot]
            else:
                for m in range(si + 1, nseg + 1):
                    pts.append(comp.vertices[m])
                for m in range(1, nsi + 1):
                    pts.append(geom.add(comp.vertices[m], cls))
                pts.append(geom.add(stubs[(nslot, 0)], cls))
                n_full = (nseg - si) + nsi
                end_anchor = geom.add(strand_pos[nslot], cls)
            levels = [comp.seg_levels[si]]
            cursor = si
            for _ in range(n_full):
                cursor = (cursor + 1) % nseg
                levels.append(comp.seg_levels[cursor])
            assert len(levels) == len(pts) - 1
            pieces[slot] = {
                "pts": pts,
                "levels": levels,
                "start_anchor": strand_pos[slot],
                "end_anchor": end_anchor,
                "end_slot": nslot,
            }
            stub_owner[(slot, 1)] = (slot, "start")
            stub_owner[(nslot, 0)] = (slot, "end")

    # Stitch pieces through the smoothing chords.  Entering a piece at its
    # start stub traverses it forward, at its end stub backward.
    consumed: set[str] = set()
    planar = d.surface.kind == DISK
    zero = (Fraction(0), Fraction(0))
    for start_slot in sorted(pieces):
        if start_slot in consumed:
            continue
        pts_acc: list[Pt] = []
        lv_acc: list[Fraction] = []
        piece_key, forward = start_slot, True
        shift = zero
        while True:
            consumed.add(piece_key)
            piece = pieces[piece_key]
            pts = piece["pts"]
            levels = piece["levels"]
            if not forward:
                pts = list(reversed(pts))
                levels = list(reversed(levels))
            shifted = [geom.add(q, shift) for q in pts]
            if pts_acc:
                lv_acc.append(lv_acc[-1])  # chord from previous arrival
            pts_acc.extend(shifted)
            lv_acc.extend(levels)
            # arrival stub and its crossing-lift anchor under the current shift
            if forward:
                arrive = (piece["end_slot"], 0)
                arrive_anchor = geom.add(piece["end_anchor"], shift)
            else:
                arrive = (piece_key, 1)
                arrive_anchor = geom.add(piece["start_anchor"], shift)
            partner = pairing[stub_port(*arrive)]
            next_stub = port_stub[partner]
            owner, which = stub_owner[next_stub]
            next_piece = pieces[owner]
            entry_anchor = (
                next_piece["start_anchor"] if which == "start" else next_piece["end_anchor"]
            )
            if planar:
                shift = zero
            else:
                shift = geom.sub(arrive_anchor, entry_anchor)
            if next_stub == (start_slot, 1):
                # closing chord back to the first emitted point (up to class)
                pts_acc.append(geom.add(next_piece["pts"][0], shift))
                lv_acc.append(lv_acc[-1])
                break
            piece_key, forward = owner, which == "start"
        new_specs.append((pts_acc, lv_acc))

    return build_diagram(d.surface, new_specs, point_overrides=pov)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _frac_json(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def surface_to_json(s: Surface) -> dict:
    out: dict = {"kind": s.kind}
    if s.kind == PUNCTURED_TORUS:
        out["puncture"] = [_frac_json(s.puncture[0]), _frac_json(s.puncture[1])]
        out["cut_ray"] = [s.cut_dir[0], s.cut_dir[1]]
    return out


def surface_from_json(obj: dict) -> Surface:
    kind = obj["kind"]
    if kind == PUNCTURED_TORUS:
        (pn, pd), (qn, qd) = obj["puncture"]
        cut = tuple(obj.get("cut_ray", (1, 0)))
        return Surface(kind, (Fraction(pn, pd), Fraction(qn, qd)), (int(cut[0]), int(cut[1])))
    return Surface(kind)


def _ambiguous_self_crossings(d: Diagram) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for idx, c in enumerate(d.crossings):
        ci, si, _ = c.a
        cj, sj, _ = c.b
        if ci == cj and d.components[ci].seg_levels[si] == d.components[cj].seg_levels[sj]:
            out.setdefault(ci, []).append(idx)
    return out


def _ambiguous_inter_crossings(d: Diagram) -> list[int]:
    out = []
    for idx, c in enumerate(d.crossings):
        ci, si, _ = c.a
        cj, sj, _ = c.b
        if ci != cj and d.components[ci].seg_levels[si] == d.components[cj].seg_levels[sj]:
            out.append(idx)
    return out


def diagram_to_json(d: Diagram) -> dict:
    comps = []
    for comp in d.components:
        entry: dict = {
            "vertices": [[_frac_json(x), _frac_json(y)] for x, y in comp.vertices]
        }
        levels = set(comp.seg_levels)
        if len(levels) == 1 and comp.seg_levels[0].denominator == 1:
            entry["level"] = int(comp.seg_levels[0])
        else:
            entry["segment_levels"] = [_frac_json(lv) for lv in comp.seg_levels]
        comps.append(entry)
    overrides = []
    for ci, idxs in sorted(_ambiguous_self_crossings(d).items()):
        for k, idx in enumerate(idxs):
            overrides.append(
                {
                    "component": ci,
                    "crossing_index": k,
                    "over": d.crossings[idx].over_is_a,
                }
            )
    out = {"surface": surface_to_json(d.surface), "components": comps}
    if overrides:
        out["self_crossing_overrides"] = overrides
    # equal-level crossings between distinct components arise from smoothing
    # surgery and handle slides; they round-trip via point-keyed entries
    inter = []
    for idx in _ambiguous_inter_crossings(d):
        c = d.crossings[idx]
        over_dir = c.dir_a if c.over_is_a else c.dir_b
        key = geom.line_key((Fraction(over_dir[0]), Fraction(over_dir[1])))
        inter.append(
            {
                "point": [_frac_json(c.point[0]), _frac_json(c.point[1])],
                "over_dir": [key[0], key[1]],
            }
        )
    if inter:
        out["point_overrides"] = inter
    return out


def diagram_from_json(obj: dict) -> Diagram:
    surface = surface_from_json(obj["surface"])
    specs = []
    for comp in obj["components"]:
        verts = [
            (Fraction(xn, xd), Fraction(yn, yd)) for (xn, xd), (yn, yd) in comp["vertices"]
        ]
        if "segment_levels" in comp:
            levels = [Fraction(n, dd) for n, dd in comp["segment_levels"]]
            specs.append((verts, levels))
        else:
            specs.append((verts, int(comp["level"])))
    pov: dict[Pt, tuple[int, int]] = {}
    for entry in obj.get("point_overrides", ()):
        (xn, xd), (yn, yd) = entry["point"]
        a, b = entry["over_dir"]
        pov[(Fraction(xn, xd), Fraction(yn, yd))] = (int(a), int(b))
    return build_diagram(
        surface,
        specs,
        self_overrides=obj.get("self_crossing_overrides"),
        point_overrides=pov or None,
    )
