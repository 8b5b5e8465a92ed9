"""Cubic curves y^2 + a xy + b y = x^3 + c x^2 + d x + e over the rationals.

Group law, translation, discriminant and division-polynomial values. In
Weierstrass notation (a, b, c, d, e) = (a1, a3, a2, a4, a6).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from edsforge.series import as_fraction


class CurveError(ValueError):
    pass


class SingularOperation(CurveError):
    pass


class NotOnCurve(CurveError):
    pass


class NonIntegerTranslation(CurveError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """An affine point, or the point at infinity when ``x`` is None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CubicCurve:
    a: int
    b: int
    c: int
    d: int
    e: int = 0

    def __post_init__(self):
        for name in "abcde":
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise CurveError(f"coefficient {name}={value!r} is not an integer")
            object.__setattr__(self, name, int(value))

    @classmethod
    def parse(cls, text: str) -> "CubicCurve":
        """Parse the literal ``"a,b,c,d"`` or ``"a,b,c,d,e"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (4, 5):
            raise CurveError(f"curve literal {text!r} needs 4 or 5 comma-separated integers")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError:
            raise CurveError(f"curve literal {text!r} has a non-integer coefficient") from None

    def __str__(self):
        return ",".join(str(v) for v in (self.a, self.b, self.c, self.d, self.e))

    def equation(self) -> str:
        def term(coef, mono):
            if coef == 0:
                return ""
            sign = " - " if coef < 0 else " + "
            mag = abs(coef)
            if not mono:
                return f"{sign}{mag}"
            return f"{sign}{'' if mag == 1 else mag}{mono}"

        lhs = "y^2" + term(self.a, "xy") + term(self.b, "y")
        rhs = "x^3" + term(self.c, "x^2") + term(self.d, "x") + term(self.e, "")
        return f"{lhs} = {rhs}"

    @property
    def b2(self) -> int:
        return self.a**2 + 4 * self.c

    @property
    def b4(self) -> int:
        return 2 * self.d + self.a * self.b

    @property
    def b6(self) -> int:
        return self.b**2 + 4 * self.e

    @property
    def b8(self) -> int:
        a1, a3, a2, a4, a6 = self.a, self.b, self.c, self.d, self.e
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    def is_singular(self) -> bool:
        return self.discriminant() == 0

    def lhs_minus_rhs(self, x, y) -> Fraction:
        return (y * y + self.a * x * y + self.b * y
                - (x**3 + self.c * x * x + self.d * x + self.e))

    def contains(self, P: CurvePoint) -> bool:
        return P.is_infinity or self.lhs_minus_rhs(P.x, P.y) == 0

    def point(self, x, y) -> CurvePoint:
        """Construct an affine point, checking the curve equation."""
        P = CurvePoint(as_fraction(x), as_fraction(y))
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self.equation()}")
        return P

    def is_singular_point(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return False
        x, y = P.x, P.y
        dy = 2 * y + self.a * x + self.b
        dx = self.a * y - (3 * x * x + 2 * self.c * x + self.d)
        return dy == 0 and dx == 0


def discriminant(E: CubicCurve) -> int:
    return E.discriminant()


def negate(E: CubicCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - E.a * P.x - E.b)


def add(E: CubicCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent addition."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if E.is_singular_point(P) or E.is_singular_point(Q):
        raise SingularOperation("the group law is undefined at a singular point")
    a1, a3, a2, a4, a6 = E.a, E.b, E.c, E.d, E.e
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return INFINITY
        denom = 2 * P.y + a1 * P.x + a3
        lam = (3 * P.x**2 + 2 * a2 * P.x + a4 - a1 * P.y) / denom
        nu = (-(P.x**3) + a4 * P.x + 2 * a6 - a3 * P.y) / denom
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x)
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def multiple(E: CubicCurve, P: CurvePoint, n: int) -> CurvePoint:
    """n*P by repeated addition."""
    if n < 0:
        return multiple(E, negate(E, P), -n)
    R = INFINITY
    for _ in range(n):
        R = add(E, R, P)
    return R


def multiple_double_and_add(E: CubicCurve, P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return multiple_double_and_add(E, negate(E, P), -n)
    R, D = INFINITY, P
    while n:
        if n & 1:
            R = add(E, R, D)
        D = add(E, D, D)
        n >>= 1
    return R


def torsion_order(E: CubicCurve, P: CurvePoint):
    """Order of P if it is at most 12, else None.

    Over the rationals a torsion point has order at most 12 (Mazur), so None
    means P has infinite order.
    """
    R = P
    for n in range(1, 13):
        if R.is_infinity:
            return n
        R = add(E, R, P)
    return None


def multiples(E: CubicCurve, P: CurvePoint, count: int) -> list:
    """[0*P, 1*P, ..., (count-1)*P]."""
    out = [INFINITY]
    for _ in range(count - 1):
        out.append(add(E, out[-1], P))
    return out


def translate(E: CubicCurve, P: CurvePoint) -> CubicCurve:
    """Substitute x -> x + P.x, y -> y + P.y so that P moves to the origin."""
    if P.is_infinity:
        raise NonIntegerTranslation("cannot translate by the point at infinity")
    if P.x.denominator != 1 or P.y.denominator != 1:
        raise NonIntegerTranslation(f"{P} does not have integer coordinates")
    if not E.contains(P):
        raise NotOnCurve(f"{P} is not on {E.equation()}")
    p, q = int(P.x), int(P.y)
    a, b, c, d, e = E.a, E.b, E.c, E.d, E.e
    return CubicCurve(
        a,
        b + 2 * q + a * p,
        c + 3 * p,
        d + 3 * p * p + 2 * c * p - a * q,
        e + p**3 + c * p * p + d * p - q * q - a * p * q - b * q,
    )


def division_values(E: CubicCurve, P: CurvePoint, count: int) -> list:
    """psi_n(P) for n = 0..count-1 (standard long-Weierstrass normalisation)."""
    if E.is_singular():
        raise SingularOperation("division polynomials need a nonsingular curve")
    if P.is_infinity:
        raise CurveError("division values are defined for affine points")
    x, y = P.x, P.y
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    psi2 = 2 * y + E.a * x + E.b
    psi = [Fraction(0), Fraction(1), psi2,
           3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8,
           psi2 * (2 * x**6 + b2 * x**5 + 5 * b4 * x**4 + 10 * b6 * x**3
                   + 10 * b8 * x**2 + (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6**2))]
    for n in range(5, count):
        m = n // 2
        if n % 2:
            psi.append(psi[m + 2] * psi[m] ** 3 - psi[m - 1] * psi[m + 1] ** 3)
        else:
            if psi2 == 0:
                raise CurveError(f"{P} is 2-torsion; even division values need psi_2 != 0")
            psi.append(psi[m] * (psi[m + 2] * psi[m - 1] ** 2
                                 - psi[m - 2] * psi[m + 1] ** 2) / psi2)
    return psi[:count]


@dataclass(frozen=True)
class DivisionSequence:
    terms: tuple

    def __post_init__(self):
        if len(self.terms) >= 2 and (self.terms[0] != 0 or self.terms[1] != 1):
            raise ValueError("a division sequence starts 0, 1")

    def __getitem__(self, n):
        return self.terms[n]

    def __len__(self):
        return len(self.terms)


def division_sequence(E: CubicCurve, P: CurvePoint, count: int) -> DivisionSequence:
    return DivisionSequence(tuple(division_values(E, P, count)))
