"""Truncated power series with exact rational coefficients.

A :class:`PowerSeries` stores the first ``order`` coefficients of a formal
power series. Every operation returns a series whose order is the number of
coefficients that are actually determined by its inputs, so truncation error
never leaks into the reported coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class SeriesError(ArithmeticError):
    pass


class DivisionByZeroSeries(SeriesError, ZeroDivisionError):
    """Divisor has a zero constant term."""


class NonSquareConstantTerm(SeriesError):
    pass


class NonzeroInnerConstant(SeriesError):
    pass


class ZeroConstantTerm(SeriesError):
    pass


class PrefixTooLong(SeriesError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a non-negative rational, or NonSquareConstantTerm."""
    q = as_fraction(q)
    if q < 0:
        raise NonSquareConstantTerm(f"{q} is negative")
    p, r = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p != q.numerator or r * r != q.denominator:
        raise NonSquareConstantTerm(f"{q} is not the square of a rational")
    return Fraction(p, r)


class PowerSeries:
    """Immutable truncated series ``c0 + c1 x + ... + c_{N-1} x^{N-1} + O(x^N)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int) -> "PowerSeries":
        """An exact polynomial, known to any order; padded or cut to ``order``."""
        coeffs = list(coeffs)
        if any(as_fraction(c) for c in coeffs[order:]):
            raise ValueError("polynomial has terms beyond the requested order")
        coeffs = coeffs[:order]
        return cls(coeffs + [0] * (order - len(coeffs)))

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "PowerSeries":
        return cls.polynomial([0] * k + [coeff], order) if k < order else cls([0] * order)

    @classmethod
    def geometric(cls, r, order: int) -> "PowerSeries":
        """Expansion of 1/(1 - r x)."""
        r = as_fraction(r)
        return cls(r**n for n in range(order))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order > 8 else ""
        return f"PowerSeries([{shown}{more}], order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return PowerSeries(self.coeffs[:order])

    def agrees_with(self, other: "PowerSeries") -> bool:
        """Equality on the coefficients both series know."""
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.polynomial([other], self.order)

    # ring operations

    def __neg__(self):
        return PowerSeries(-c for c in self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries(self.coeffs[i] + other.coeffs[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            k = as_fraction(other)
            return PowerSeries(k * c for c in self.coeffs)
        n = min(self.order, other.order)
        s, t = self.coeffs, other.coeffs
        return PowerSeries(sum(s[i] * t[k - i] for i in range(k + 1)) for k in range(n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            k = as_fraction(other)
            if k == 0:
                raise ZeroDivisionError("division of a series by zero")
            return PowerSeries(c / k for c in self.coeffs)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries.polynomial([1], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> "PowerSeries":
        s = self.coeffs
        if not s or s[0] == 0:
            raise DivisionByZeroSeries("series has zero constant term")
        inv0 = 1 / s[0]
        out = [inv0]
        for k in range(1, self.order):
            out.append(-inv0 * sum(s[i] * out[k - i] for i in range(1, k + 1)))
        return PowerSeries(out)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by x**k; the result knows k more coefficients."""
        return PowerSeries([0] * k + list(self.coeffs))

    def derivative(self) -> "PowerSeries":
        return PowerSeries(i * self.coeffs[i] for i in range(1, self.order))


def add(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s + t


def sub(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s - t


def mul(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s * t


def div(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s / t


def sqrt(s: PowerSeries) -> PowerSeries:
    """Square root with positive constant term, by Newton iteration.

    Each step ``t <- (t + s/t)/2`` doubles the number of correct
    coefficients, starting from the rational square root of ``s[0]``.
    """
    if s.order == 0:
        return s
    n = s.order
    t = PowerSeries([rational_sqrt(s[0])])
    if t[0] == 0:
        raise NonSquareConstantTerm("constant term is zero; sqrt is not a power series")
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        padded = PowerSeries(list(t.coeffs) + [0] * (prec - t.order))
        t = (padded + s.truncate(prec) / padded) / 2
    return t


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """f(g(x)) for inner series with zero constant term (Horner scheme)."""
    if g.order and g[0] != 0:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    result = PowerSeries.polynomial([f[n - 1]] if n else [], n)
    for i in range(n - 2, -1, -1):
        result = result * g + f[i]
    return result


def revert(g: PowerSeries) -> PowerSeries:
    """Reversion of a series with nonzero constant term.

    This is ``(1/x) * inverse(x g(x))`` where ``inverse`` is compositional
    inversion; by Lagrange inversion its n-th coefficient is
    ``[x^n] g(x)^(-(n+1)) / (n+1)``.
    """
    if g.order == 0:
        return g
    if g[0] == 0:
        raise ZeroConstantTerm("revert needs a nonzero constant term")
    h = g.reciprocal()
    power = h
    out = []
    for n in range(g.order):
        out.append(power[n] / (n + 1))
        power = power * h
    return PowerSeries(out)


def compositional_inverse(f: PowerSeries) -> PowerSeries:
    """Classical inverse v with f(v(x)) = x, for f[0] = 0 and f[1] != 0.

    Solved coefficient by coefficient: the x^n coefficient of f(v) is
    ``f[1] v[n]`` plus terms in v[1..n-1] only.
    """
    if f.order < 2:
        raise ValueError("need at least two coefficients")
    if f[0] != 0 or f[1] == 0:
        raise ValueError("compositional inverse needs f[0] = 0 and f[1] != 0")
    n = f.order
    v = [Fraction(0)] * n
    v[1] = 1 / f[1]
    for k in range(2, n):
        trial = PowerSeries(v[: k + 1])
        rest = compose(f.truncate(k + 1), trial)[k]
        v[k] = -rest / f[1]
    return PowerSeries(v)


def binomial_transform(g: PowerSeries, r) -> PowerSeries:
    """(1/(1 - r x)) g(x/(1 - r x))."""
    r = as_fraction(r)
    n = g.order
    geo = PowerSeries.geometric(r, n)
    return geo * compose(g, geo.shift(1).truncate(n))


def invert_transform(g: PowerSeries, r) -> PowerSeries:
    """g(x) / (1 - r x g(x))."""
    r = as_fraction(r)
    return g / (1 - r * g.shift(1).truncate(g.order))


def drop_prefix(g: PowerSeries, k: int) -> PowerSeries:
    """(g - sum_{i<k} g_i x^i) / x^k."""
    if k < 0 or k > g.order:
        raise PrefixTooLong(f"cannot drop {k} terms from a series of order {g.order}")
    return PowerSeries(g.coeffs[k:])


@dataclass(frozen=True)
class IntegerSequence:
    """Terms of a sequence together with the index of the first term."""

    terms: tuple
    offset: int = 0

    def __post_init__(self):
        terms = tuple(as_fraction(t) for t in self.terms)
        if not terms:
            raise ValueError("sequence must have at least one term")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]

    @classmethod
    def from_series(cls, s: PowerSeries) -> "IntegerSequence":
        return cls(s.coeffs, 0)

    def as_series(self) -> PowerSeries:
        return PowerSeries(self.terms)


def bisect(s: IntegerSequence, parity: int) -> IntegerSequence:
    """Every second term, starting with the first term whose index has ``parity``."""
    start = (parity - s.offset) % 2
    return IntegerSequence(s.terms[start::2], (s.offset + start) // 2)
