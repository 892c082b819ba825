"""The Kauffman bracket state sum and the twisted-parameter isomorphism maps.

A `Skein` is a finitely supported map from simple multicurves to Laurent
polynomials in zeta, the basis presentation of the skein algebra of a
surface.  `bracket` computes the state sum

    <D> = sum over states  zeta^c(s) * (-zeta^2 - zeta^-2)^t(s) * s'

exactly, `skein_mul` is stack-then-bracket on basis multicurves, and `grade`
and `character_act` implement the Z2-homology grading with its character
action.

`phi` sends a multicurve a to (-1)^(components) a tensor [oriented class] in
the twist algebra; `psi` is its diagram-level lift with the i^(-writhe)
correction.  `verify_comm` checks, exactly in symbolic zeta, that the bracket
at the twisted parameter followed by phi agrees with psi followed by the
bracket, term by term over every state.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import statesum
from .geom import normalize_slope
from .diagram import (
    Diagram,
    DiagramError,
    OrientedDiagram,
    SimpleMulticurve,
    Surface,
    make_multicurve,
    orient_data,
    realize_multicurve,
    resolve,
    stack,
)
from .homology import a_canonicalize
from .ring import GaussRat, LaurentPoly, i_power

__all__ = [
    "Skein",
    "TensorElem",
    "CrossingCapExceeded",
    "bracket",
    "skein_mul",
    "grade",
    "character_act",
    "phi",
    "psi",
    "verify_comm",
    "state_identities",
]

DEFAULT_CROSSING_CAP = 20


class CrossingCapExceeded(RuntimeError):
    """Raised instead of silently enumerating more than 2^cap states."""


@dataclass(frozen=True)
class Skein:
    """Finitely supported map SimpleMulticurve -> LaurentPoly over one surface."""

    surface: Surface
    terms: dict[SimpleMulticurve, LaurentPoly]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {mc: c for mc, c in self.terms.items() if c}
        )

    @classmethod
    def zero(cls, surface: Surface) -> Skein:
        return cls(surface, {})

    @classmethod
    def basis(cls, surface: Surface, mc: SimpleMulticurve) -> Skein:
        return cls(surface, {mc: LaurentPoly.const(1)})

    def __add__(self, other: Skein) -> Skein:
        self._check(other)
        out = dict(self.terms)
        for mc, c in other.terms.items():
            s = out.get(mc, LaurentPoly.zero()) + c
            if s:
                out[mc] = s
            else:
                out.pop(mc, None)
        return Skein(self.surface, out)

    def __sub__(self, other: Skein) -> Skein:
        return self + other.scale_poly(LaurentPoly.const(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Skein):
            return NotImplemented
        return self.surface == other.surface and self.terms == other.terms

    def scale_poly(self, f: LaurentPoly) -> Skein:
        return Skein(self.surface, {mc: c * f for mc, c in self.terms.items()})

    def scale(self, c: GaussRat) -> Skein:
        return self.scale_poly(LaurentPoly.const(c))

    def eval_unit(self, zeta: GaussRat) -> dict[SimpleMulticurve, GaussRat]:
        return {mc: v for mc, v in ((mc, c.eval_unit(zeta)) for mc, c in self.terms.items()) if v}

    def twist(self) -> Skein:
        return Skein(self.surface, {mc: c.twist() for mc, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[SimpleMulticurve, LaurentPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def _check(self, other: Skein) -> None:
        if self.surface != other.surface:
            raise DiagramError("skein arithmetic requires one surface")


@dataclass(frozen=True)
class TensorElem:
    """Element of (skein tensor twist-algebra): (multicurve, canonical lift)
    keys with Laurent coefficients."""

    surface: Surface
    terms: dict[tuple[SimpleMulticurve, tuple[int, ...]], LaurentPoly]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {k: c for k, c in self.terms.items() if c}
        )

    def __add__(self, other: TensorElem) -> TensorElem:
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, LaurentPoly.zero()) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElem(self.surface, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.surface == other.surface and self.terms == other.terms

    def is_diagonal(self) -> bool:
        rank = self.surface.rank
        return all(
            mc.class_mod2(rank) == lift for (mc, lift) in self.terms
        )


# ---------------------------------------------------------------------------
# The bracket
# ---------------------------------------------------------------------------


def _cap_guard(d: Diagram, cap: int) -> None:
    if d.ncross > cap:
        raise CrossingCapExceeded(
            f"{d.ncross} crossings exceeds the cap {cap}; raise max_crossings"
        )


def bracket(d: Diagram, max_crossings: int = DEFAULT_CROSSING_CAP) -> Skein:
    """Exact state sum over all 2^cr smoothings, symbolic in zeta."""
    _cap_guard(d, max_crossings)
    # constant contribution of components not meeting any crossing
    t_free = 0
    bp_free = 0
    free_parts: dict[tuple[int, int], int] = {}
    for ci in d.skeleton.free_comps:
        comp = d.components[ci]
        cls = comp.class_vec
        if d.surface.kind == "disk" or all(x == 0 for x in cls):
            if d.surface.kind == "punctured_torus" and d.comp_winding[ci]:
                bp_free += 1
            else:
                t_free += 1
        else:
            slope = normalize_slope(cls)
            free_parts[slope] = free_parts.get(slope, 0) + 1

    counts = statesum.bracket_counts(d)
    delta = LaurentPoly.loop_value()
    out: dict[SimpleMulticurve, LaurentPoly] = {}
    for (c, t, sp, sq, mult, bp), n in counts.items():
        parts = dict(free_parts)
        if mult:
            parts[(sp, sq)] = parts.get((sp, sq), 0) + mult
        mc = make_multicurve(d.surface, parts, bp + bp_free)
        coeff = LaurentPoly.zeta_pow(c, n) * delta ** (t + t_free)
        acc = out.get(mc, LaurentPoly.zero()) + coeff
        if acc:
            out[mc] = acc
        else:
            out.pop(mc, None)
    return Skein(d.surface, out)


@lru_cache(maxsize=4096)
def _basis_product(
    surface: Surface, a: SimpleMulticurve, b: SimpleMulticurve, cap: int
) -> Skein:
    top = realize_multicurve(a, surface)
    bot = realize_multicurve(b, surface, variant=1)
    return bracket(stack(top, bot), max_crossings=cap)


def skein_mul(
    a: Skein, b: Skein, max_crossings: int = DEFAULT_CROSSING_CAP
) -> Skein:
    """Bilinear extension of stack-then-bracket on basis multicurves."""
    a._check(b)
    out = Skein.zero(a.surface)
    for mc_a, ca in a.terms.items():
        for mc_b, cb in b.terms.items():
            prod = _basis_product(a.surface, mc_a, mc_b, max_crossings)
            out = out + prod.scale_poly(ca * cb)
    return out


# ---------------------------------------------------------------------------
# Grading and the character action
# ---------------------------------------------------------------------------


def grade(x: Skein) -> dict[tuple[int, ...], Skein]:
    """Partition by the Z2 homology class of the underlying multicurves."""
    rank = x.surface.rank
    parts: dict[tuple[int, ...], dict] = {}
    for mc, c in x.terms.items():
        parts.setdefault(mc.class_mod2(rank), {})[mc] = c
    return {u: Skein(x.surface, terms) for u, terms in parts.items()}


def character_act(x: Skein, chi: tuple[int, ...]) -> Skein:
    """Scale each graded part by the character value (-1)^<chi, u>."""
    rank = x.surface.rank
    if len(chi) != rank:
        raise DiagramError("character length must equal the homology rank")
    out = {}
    for mc, c in x.terms.items():
        u = mc.class_mod2(rank)
        sign = sum(a * b for a, b in zip(chi, u)) % 2
        out[mc] = c.scale(GaussRat(-1)) if sign else c
    return Skein(x.surface, out)


# ---------------------------------------------------------------------------
# phi and psi
# ---------------------------------------------------------------------------


def phi(x: Skein) -> TensorElem:
    """Basis map: a multicurve with n strands goes to
    (-1)^n (multicurve tensor [oriented class]), lift canonicalized."""
    lat = x.surface.lattice()
    out: dict[tuple[SimpleMulticurve, tuple[int, ...]], LaurentPoly] = {}
    for mc, c in x.terms.items():
        n = mc.n_components()
        unit, key = a_canonicalize(mc.class_vec(x.surface.rank), lat)
        coeff = c.scale(unit * i_power(2 * n))  # (-1)^n = i^(2n)
        k = (mc, key)
        acc = out.get(k, LaurentPoly.zero()) + coeff
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return TensorElem(x.surface, out)


@dataclass(frozen=True)
class PsiValue:
    """(-1)^n i^(-writhe) D tensor [Seifert cycle class], lift canonicalized.

    `coeff` folds the canonicalization unit in, so equal values mean equal
    elements regardless of which orientation produced them.
    """

    coeff: GaussRat
    diagram: Diagram
    lift: tuple[int, ...]


def psi(d: Diagram, direction: tuple[int, ...] | None = None) -> PsiValue:
    if direction is None:
        direction = (1,) * d.ncomp
    od = OrientedDiagram(d, tuple(direction))
    data = orient_data(od)
    lat = d.surface.lattice()
    unit, key = a_canonicalize(data.xi, lat)
    coeff = i_power(2 * d.ncomp) * i_power(-data.writhe) * unit
    return PsiValue(coeff, d, key)


# ---------------------------------------------------------------------------
# Per-state identities and the commuting square
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateIdentityReport:
    ok: bool
    failures: tuple[str, ...]


def state_identities(d: Diagram, direction: tuple[int, ...] | None = None) -> StateIdentityReport:
    """For every state: Seifert/non-Seifert counts add to the crossing number,
    i^(c+w) = (-1)^(Seifert count), and the state's oriented class reduces to
    the Seifert class in the twist algebra with the half-pairing sign."""
    if direction is None:
        direction = (1,) * d.ncomp
    od = OrientedDiagram(d, tuple(direction))
    data = orient_data(od)
    lat = d.surface.lattice()
    failures = []
    for bits in range(1 << d.ncross):
        state = tuple(1 if (bits >> k) & 1 else -1 for k in range(d.ncross))
        res = resolve(d, state)
        ss = sum(1 for k in range(d.ncross) if state[k] == data.seifert_choice[k])
        ns = sum(1 for k in range(d.ncross) if state[k] != data.seifert_choice[k])
        if ss + ns != d.ncross:
            failures.append(f"state {state}: ss+ns != cr")
        if i_power(res.c + data.writhe) != i_power(2 * ss):
            failures.append(f"state {state}: i^(c+w) != (-1)^ss")
        if d.surface.rank:
            pairing = lat.omega(data.xi, res.sbar_class)
            if pairing % 2:
                failures.append(f"state {state}: odd xi pairing")
                continue
            unit_s, key_s = a_canonicalize(res.sbar_class, lat)
            unit_xi, key_xi = a_canonicalize(data.xi, lat)
            if key_s != key_xi:
                failures.append(f"state {state}: lift keys differ")
            elif unit_s != i_power(2 * (pairing // 2)) * unit_xi:
                failures.append(f"state {state}: lift units differ")
    return StateIdentityReport(not failures, tuple(failures))


@dataclass(frozen=True)
class CommCheck:
    ok: bool
    lhs: TensorElem | None = None
    rhs: TensorElem | None = None
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_comm(d: Diagram, max_crossings: int = DEFAULT_CROSSING_CAP) -> CommCheck:
    """The commuting square at symbolic zeta.

    Left side: psi, then bracket tensor identity.  Right side: bracket with
    zeta replaced by i*zeta (computed as twist-after-bracket, sharing one
    state enumeration), then phi.  Also asserts the per-state lift identity
    through `state_identities`.
    """
    _cap_guard(d, max_crossings)
    ids = state_identities(d)
    if not ids.ok:
        return CommCheck(False, witness="; ".join(ids.failures[:3]))

    br = bracket(d, max_crossings)
    value = psi(d)
    lhs_terms = {
        (mc, value.lift): c.scale(value.coeff) for mc, c in br.terms.items()
    }
    lhs = TensorElem(d.surface, lhs_terms)
    rhs = phi(br.twist())
    if lhs == rhs:
        return CommCheck(True, lhs, rhs)
    keys = set(lhs.terms) | set(rhs.terms)
    for k in sorted(keys, key=lambda kk: (kk[0].sort_key(), kk[1])):
        if lhs.terms.get(k, LaurentPoly.zero()) != rhs.terms.get(k, LaurentPoly.zero()):
            witness = (
                f"mismatch at {k}: psi-side {lhs.terms.get(k, LaurentPoly.zero())!r}, "
                f"phi-side {rhs.terms.get(k, LaurentPoly.zero())!r}"
            )
            return CommCheck(False, lhs, rhs, witness)
    return CommCheck(False, lhs, rhs, "unreachable")


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def skein_to_json(x: Skein) -> dict:
    from .diagram import surface_to_json

    terms = []
    for mc, coeff in x.sorted_terms():
        terms.append(
            {
                "multicurve": {
                    "slopes": [[p, q, m] for (p, q), m in mc.slopes],
                    "boundary_parallel": mc.boundary_parallel,
                },
                "coeff": coeff.to_tuples(),
            }
        )
    return {"surface": surface_to_json(x.surface), "terms": terms}


def skein_from_json(obj: dict) -> Skein:
    from .diagram import surface_from_json

    surface = surface_from_json(obj["surface"])
    terms = {}
    for entry in obj["terms"]:
        mc = make_multicurve(
            surface,
            {(p, q): m for p, q, m in entry["multicurve"]["slopes"]},
            entry["multicurve"].get("boundary_parallel", 0),
        )
        terms[mc] = LaurentPoly.from_tuples(entry["coeff"])
    return Skein(surface, terms)
