"""Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials.

Everything downstream (state sums, twist algebra, row reduction) runs over a
single numeric tower: Q(i) for scalars and Z-graded Laurent polynomials in one
variable zeta with Q(i) coefficients.  All arithmetic is exact; the only
floating-point path is `lp_eval_approx`, which is clearly flagged as such.

The twist substitution zeta -> i*zeta (`lp_twist`) and exact evaluation at
fourth roots of unity (`lp_eval`) are the two operations the isomorphism
machinery leans on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = [
    "GaussRat",
    "LaurentPoly",
    "lp_mul",
    "lp_twist",
    "lp_eval",
    "lp_eval_approx",
]

_FractionLike = Fraction | int


def _frac(x: _FractionLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, slots=True)
class GaussRat:
    """A Gaussian rational re + im*i with reduced Fraction parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re: _FractionLike = 0, im: _FractionLike = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: GaussRat | int) -> GaussRat:
        other = _coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: GaussRat | int) -> GaussRat:
        other = _coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: GaussRat | int) -> GaussRat:
        return _coerce(other) - self

    def __mul__(self, other: GaussRat | int) -> GaussRat:
        other = _coerce(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> GaussRat:
        return GaussRat(-self.re, -self.im)

    def __truediv__(self, other: GaussRat | int) -> GaussRat:
        other = _coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __pow__(self, n: int) -> GaussRat:
        if n < 0:
            return (GaussRat(1) / self) ** (-n)
        result = GaussRat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def is_fourth_root(self) -> bool:
        return self in (ONE, MINUS_ONE, I, MINUS_I)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


def _coerce(x: GaussRat | _FractionLike) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


ZERO = GaussRat(0)
ONE = GaussRat(1)
MINUS_ONE = GaussRat(-1)
I = GaussRat(0, 1)
MINUS_I = GaussRat(0, -1)

# i^k for k mod 4; used by the twist and by canonical lifts.
_I_POWERS = (ONE, I, MINUS_ONE, MINUS_I)


def i_power(k: int) -> GaussRat:
    """i^k, exact, for any integer k."""
    return _I_POWERS[k % 4]


class LaurentPoly:
    """Finitely supported map exponent -> GaussRat, the ring Q(i)[zeta, zeta^-1].

    Instances are immutable by convention; all operations return new objects
    and zero coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, GaussRat] | None = None):
        clean: dict[int, GaussRat] = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(c, GaussRat):
                    c = GaussRat(c)
                if c:
                    clean[int(e)] = c
        self._coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def const(cls, c: GaussRat | _FractionLike) -> LaurentPoly:
        return cls({0: _coerce(c)})

    @classmethod
    def zeta_pow(cls, k: int, c: GaussRat | _FractionLike = 1) -> LaurentPoly:
        return cls({k: _coerce(c)})

    @classmethod
    def loop_value(cls) -> LaurentPoly:
        """The trivial-loop multiplier -zeta^2 - zeta^-2."""
        return cls({2: MINUS_ONE, -2: MINUS_ONE})

    # -- inspection ----------------------------------------------------------

    def coeff(self, e: int) -> GaussRat:
        return self._coeffs.get(e, ZERO)

    def items(self) -> Iterable[tuple[int, GaussRat]]:
        return self._coeffs.items()

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted((e, c.re, c.im) for e, c in self._coeffs.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __neg__(self) -> LaurentPoly:
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: -c for e, c in self._coeffs.items()}
        return res

    def __mul__(self, other: LaurentPoly | GaussRat | int) -> LaurentPoly:
        if isinstance(other, (GaussRat, int)):
            return self.scale(_coerce(other))
        out: dict[int, GaussRat] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    __rmul__ = __mul__

    def scale(self, c: GaussRat) -> LaurentPoly:
        if not c:
            return LaurentPoly.zero()
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: v * c for e, v in self._coeffs.items()}
        return res

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by zeta^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e + k: c for e, c in self._coeffs.items()}
        return res

    # -- the twist and evaluation ---------------------------------------------

    def twist(self) -> LaurentPoly:
        """Substitute zeta -> i*zeta: coefficient at exponent k picks up i^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: c * i_power(e) for e, c in self._coeffs.items()}
        return res

    def eval_unit(self, zeta: GaussRat) -> GaussRat:
        """Exact evaluation at zeta in {1, -1, i, -i}."""
        if not zeta.is_fourth_root():
            raise ValueError(
                f"exact evaluation requires a fourth root of unity, got {zeta!r}"
            )
        # zeta = i^idx, so zeta^e = i^(idx*e); everything cycles with period 4.
        idx = _I_POWERS.index(zeta)
        total = ZERO
        for e, c in self._coeffs.items():
            total = total + c * _I_POWERS[(idx * e) % 4]
        return total

    def eval_approx(self, zeta: complex) -> complex:
        """Floating-point evaluation at an arbitrary nonzero zeta (approximate)."""
        if zeta == 0:
            raise ValueError("zeta must be nonzero")
        return sum(complex(c) * zeta**e for e, c in self._coeffs.items())

    # -- serialization ---------------------------------------------------------

    def to_tuples(self) -> list[list[int]]:
        """Sorted [exponent, re_num, re_den, im_num, im_den] rows, bit-exact."""
        return [
            [
                e,
                self._coeffs[e].re.numerator,
                self._coeffs[e].re.denominator,
                self._coeffs[e].im.numerator,
                self._coeffs[e].im.denominator,
            ]
            for e in sorted(self._coeffs)
        ]

    @classmethod
    def from_tuples(cls, rows: Iterable[Iterable[int]]) -> LaurentPoly:
        out: dict[int, GaussRat] = {}
        for row in rows:
            e, rn, rd, imn, imd = (int(x) for x in row)
            out[e] = GaussRat(Fraction(rn, rd), Fraction(imn, imd))
        return cls(out)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            if e == 0:
                parts.append(f"{c!r}")
            elif e == 1:
                parts.append(f"({c!r})*z")
            else:
                parts.append(f"({c!r})*z^{e}")
        return " + ".join(parts)


# -- spec-level operation aliases ------------------------------------------------


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Convolution product."""
    return a * b


def lp_twist(a: LaurentPoly) -> LaurentPoly:
    """The substitution f(zeta) -> f(i*zeta)."""
    return a.twist()


def lp_eval(a: LaurentPoly, zeta: GaussRat) -> GaussRat:
    """Exact evaluation at a fourth root of unity."""
    return a.eval_unit(zeta)


def lp_eval_approx(a: LaurentPoly, zeta: complex) -> complex:
    """Approximate floating-point evaluation away from the exact locus."""
    return a.eval_approx(zeta)
