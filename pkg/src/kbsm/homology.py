"""Integer homology lattices, the i-twisted algebra on H_1, and Smith form.

A `Lattice` is Z^rank with an antisymmetric intersection pairing omega.  The
twist algebra has basis classes [gamma] for gamma in the lattice subject to
[gamma][eta] = i^{-omega(gamma,eta)} [gamma+eta] and [2gamma] = 1, so every
element is a Q(i)-combination of the 2^rank canonical 0/1 lifts.

`smith_form` is the exact integer Smith normal form with unimodular
transforms; it backs first-homology computations of Heegaard manifolds and
the 2-torsion detection in `divisibility_audit`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .ring import GaussRat, ONE, i_power

__all__ = [
    "Lattice",
    "AElem",
    "a_canonicalize",
    "a_generator",
    "a_mul",
    "smith_form",
    "SmithForm",
    "divisibility_audit",
    "DivisibilityReport",
]

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Z^rank with an antisymmetric bilinear form."""

    rank: int
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.form) != self.rank or any(len(r) != self.rank for r in self.form):
            raise ValueError("form must be a rank x rank matrix")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.form[i][j] != -self.form[j][i]:
                    raise ValueError("form must be antisymmetric")

    @classmethod
    def symplectic(cls, genus: int) -> Lattice:
        """Rank 2g with omega(e_{2i}, e_{2i+1}) = +1 on symplectic pairs."""
        rank = 2 * genus
        form = [[0] * rank for _ in range(rank)]
        for i in range(genus):
            form[2 * i][2 * i + 1] = 1
            form[2 * i + 1][2 * i] = -1
        return cls(rank, tuple(tuple(r) for r in form))

    @classmethod
    def trivial(cls) -> Lattice:
        return cls(0, ())

    def check_vec(self, v: Vec) -> Vec:
        v = tuple(int(x) for x in v)
        if len(v) != self.rank:
            raise ValueError(f"vector length {len(v)} != lattice rank {self.rank}")
        return v

    def omega(self, a: Vec, b: Vec) -> int:
        a = self.check_vec(a)
        b = self.check_vec(b)
        total = 0
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.form[i]
            for j, bj in enumerate(b):
                if bj:
                    total += ai * row[j] * bj
        return total

    def reduce2(self, v: Vec) -> Vec:
        """Coordinatewise mod-2 reduction (the canonical 0/1 lift)."""
        return tuple(x & 1 for x in self.check_vec(v))

    def zero(self) -> Vec:
        return (0,) * self.rank


# ---------------------------------------------------------------------------
# The twist algebra
# ---------------------------------------------------------------------------


def a_canonicalize(gamma: Vec, lat: Lattice) -> tuple[GaussRat, Vec]:
    """Rewrite [gamma] as unit * [key] with key the 0/1 lift of gamma mod 2.

    The unit is i^omega(key, gamma); together with the relations [2beta] = 1
    this is the unique reduction to the canonical basis.
    """
    gamma = lat.check_vec(gamma)
    key = lat.reduce2(gamma)
    return i_power(lat.omega(key, gamma)), key


@dataclass(frozen=True)
class AElem:
    """Finitely supported map from canonical 0/1 lifts to Gaussian rationals."""

    terms: dict[Vec, GaussRat] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, c in self.terms.items():
            if any(x not in (0, 1) for x in k):
                raise ValueError(f"non-canonical key {k}")
            if c:
                clean[tuple(k)] = c
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AElem):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: AElem) -> AElem:
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, GaussRat(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AElem(out)

    def __neg__(self) -> AElem:
        return AElem({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: AElem) -> AElem:
        return self + (-other)

    def scale(self, c: GaussRat) -> AElem:
        return AElem({k: v * c for k, v in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)


def a_generator(gamma: Vec, lat: Lattice) -> AElem:
    """The class [gamma] expressed over the canonical basis."""
    unit, key = a_canonicalize(gamma, lat)
    return AElem({key: unit})


def a_mul(x: AElem, y: AElem, lat: Lattice) -> AElem:
    """Distributive extension of [g][h] = i^{-omega(g,h)} [g+h], re-canonicalized."""
    out: dict[Vec, GaussRat] = {}
    for g, cg in x.terms.items():
        lat.check_vec(g)
        for h, ch in y.terms.items():
            lat.check_vec(h)
            s = tuple(a + b for a, b in zip(g, h))
            unit, key = a_canonicalize(s, lat)
            c = cg * ch * unit * i_power(-lat.omega(g, h))
            acc = out.get(key, GaussRat(0)) + c
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return AElem(out)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """u @ m @ v is diagonal with divisibility chain d[0] | d[1] | ..."""

    d: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]


def _mat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_form(m: list[list[int]] | tuple) -> SmithForm:
    """Exact Smith normal form of an integer matrix with transforms."""
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = _mat_identity(nrows)
    v = _mat_identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        for c in range(ncols):
            a[dst][c] += k * a[src][c]
        for c in range(nrows):
            u[dst][c] += k * u[src][c]

    def add_col(src, dst, k):
        for r in range(nrows):
            a[r][dst] += k * a[r][src]
        for r in range(ncols):
            v[r][dst] += k * v[r][src]

    def negate_row(i):
        for c in range(ncols):
            a[i][c] = -a[i][c]
        for c in range(nrows):
            u[i][c] = -u[i][c]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # locate the smallest nonzero entry in the remaining block
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t by Euclidean steps
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility of the rest of the block by the pivot
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = tuple(a[i][i] for i in range(limit))
    return SmithForm(
        d,
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in v),
    )


def invariant_factors(m) -> list[int]:
    """Nonzero invariant factors followed by zeros for free rank of the cokernel."""
    return list(smith_form(m).d)


# ---------------------------------------------------------------------------
# Divisibility audit for antisymmetric pairings of complementary isotropics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisibilityReport:
    hypothesis_ok: bool
    hypothesis_failures: tuple[str, ...]
    pairs_checked: int
    mod4_histogram: dict[int, int]
    witnesses: tuple[tuple[Vec, Vec, int], ...]
    all_divisible: bool


def divisibility_audit(
    lat: Lattice,
    sub_l: list[Vec],
    sub_lp: list[Vec],
    bound: int,
    max_witnesses: int = 8,
) -> DivisibilityReport:
    """Enumerate alpha in span(sub_l), alpha' in span(sub_lp) with coefficients
    bounded by `bound` and alpha + alpha' even, and report omega(alpha, alpha')
    mod 4.

    Preconditions (checked, reported rather than raised): omega vanishes on
    each span separately, and the quotient of the lattice by the joint span
    has no 2-torsion.  When a precondition fails the enumeration still runs,
    since the failing case is exactly the interesting witness-producing one.
    """
    sub_l = [lat.check_vec(v) for v in sub_l]
    sub_lp = [lat.check_vec(v) for v in sub_lp]
    failures: list[str] = []
    for name, gens in (("first subgroup", sub_l), ("second subgroup", sub_lp)):
        for i, x in enumerate(gens):
            for y in gens[i:]:
                if lat.omega(x, y) != 0:
                    failures.append(f"pairing not zero on {name}: omega({x},{y}) != 0")
    cols = [list(v) for v in sub_l + sub_lp]
    if cols:
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(lat.rank)]
        factors = smith_form(mat).d
        # pad with zeros for coordinates not hit at all
        padded = list(factors) + [0] * (lat.rank - len(factors))
        if any(d != 1 and d % 2 == 0 for d in padded):
            failures.append("quotient by the joint span has 2-torsion")
    elif lat.rank > 0:
        # empty spans: quotient is free, no 2-torsion
        pass

    histogram: dict[int, int] = {0: 0, 1: 0, 2: 0, 3: 0}
    witnesses: list[tuple[Vec, Vec, int]] = []
    pairs = 0
    coeff_range = range(-bound, bound + 1)

    def span_elements(gens):
        if not gens:
            yield lat.zero()
            return
        for coeffs in product(coeff_range, repeat=len(gens)):
            v = [0] * lat.rank
            for c, g in zip(coeffs, gens):
                if c:
                    for i, gi in enumerate(g):
                        v[i] += c * gi
            yield tuple(v)

    lp_elements = list(span_elements(sub_lp))
    for alpha in span_elements(sub_l):
        for alpha_p in lp_elements:
            if any((x + y) % 2 for x, y in zip(alpha, alpha_p)):
                continue
            pairs += 1
            w = lat.omega(alpha, alpha_p) % 4
            histogram[w] += 1
            if w != 0 and len(witnesses) < max_witnesses:
                witnesses.append((alpha, alpha_p, lat.omega(alpha, alpha_p)))

    return DivisibilityReport(
        hypothesis_ok=not failures,
        hypothesis_failures=tuple(failures),
        pairs_checked=pairs,
        mod4_histogram={k: v for k, v in histogram.items() if v},
        witnesses=tuple(witnesses),
        all_divisible=histogram[1] == 0 and histogram[2] == 0 and histogram[3] == 0,
    )
