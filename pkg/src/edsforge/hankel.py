"""Hankel determinants, Jacobi continued fractions and Somos-4 fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from edsforge.series import PowerSeries, as_fraction, drop_prefix


class InsufficientTerms(ValueError):
    pass


class InsufficientDepth(ValueError):
    pass


class ZeroHankelPivot(ArithmeticError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"Hankel determinant h_{index} vanishes")


class ZeroScaleBase(ValueError):
    pass


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free elimination.

    Rational entries are first scaled to integers by the lcm of their
    denominators; the factor is divided out at the end.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [[as_fraction(v) for v in row] for row in matrix]
    scale = 1
    for row in rows:
        for v in row:
            scale = math.lcm(scale, v.denominator)
    m = [[int(v * scale) for v in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], scale**n)


def cofactor_det(matrix: Sequence[Sequence]) -> Fraction:
    """Leibniz-formula determinant; the slow reference for :func:`bareiss_det`."""
    n = len(matrix)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= as_fraction(matrix[i][perm[i]])
        total += term
    return total


def hankel_matrix(a: Sequence, n: int) -> list:
    return [[a[i + j] for j in range(n + 1)] for i in range(n + 1)]


def modified_hankel_matrix(a: Sequence, n: int) -> list:
    """Hankel matrix of size n+1 whose last row is a_{n+j+1}."""
    rows = [[a[i + j] for j in range(n + 1)] for i in range(n)]
    rows.append([a[n + j + 1] for j in range(n + 1)])
    return rows


def _terms(a) -> list:
    terms = a.terms if hasattr(a, "terms") else a.coeffs if hasattr(a, "coeffs") else a
    return [as_fraction(t) for t in terms]


def hankel_transform(a, count: int) -> list:
    """h_n = det[a_{i+j}]_{0<=i,j<=n} for n < count."""
    terms = _terms(a)
    if len(terms) < 2 * count - 1:
        raise InsufficientTerms(f"{count} Hankel terms need {2 * count - 1} sequence terms, got {len(terms)}")
    return [bareiss_det(hankel_matrix(terms, n)) for n in range(count)]


def modified_hankel(a, count: int) -> list:
    terms = _terms(a)
    if len(terms) < 2 * count:
        raise InsufficientTerms(f"{count} modified Hankel terms need {2 * count} sequence terms, got {len(terms)}")
    return [bareiss_det(modified_hankel_matrix(terms, n)) for n in range(count)]


def rescale_hankel(h: Sequence, b: int) -> list:
    """h_n / b^(n^2 - 2n)."""
    if b == 0:
        raise ZeroScaleBase("scale base b is zero")
    return [as_fraction(v) / Fraction(b) ** (n * n - 2 * n) for n, v in enumerate(h)]


@dataclass(frozen=True)
class HankelData:
    h: tuple
    hstar: tuple
    scale_base: int
    htilde: tuple

    @classmethod
    def of(cls, a, b: int, count: Optional[int] = None) -> "HankelData":
        terms = _terms(a)
        if count is None:
            count = (len(terms) + 1) // 2
        h = hankel_transform(terms, count)
        hstar = modified_hankel(terms, min(count, len(terms) // 2))
        return cls(tuple(h), tuple(hstar), b, tuple(rescale_hankel(h, b)))


@dataclass(frozen=True)
class JacobiFraction:
    """Coefficients of 1/(1 - alpha_0 x - beta_1 x^2/(1 - alpha_1 x - beta_2 x^2/(...))).

    ``betas[0]`` is the conventional 1; ``betas[k]`` links level k-1 to
    level k. ``terminated`` marks a fraction that stops exactly (a zero beta
    with nothing below it), so it determines every coefficient.
    """

    alphas: tuple
    betas: tuple
    terminated: bool = False

    def __post_init__(self):
        alphas = tuple(as_fraction(v) for v in self.alphas)
        betas = tuple(as_fraction(v) for v in self.betas)
        if len(betas) != len(alphas):
            raise ValueError("alphas and betas (with betas[0] = 1) must have equal length")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    @property
    def depth(self) -> int:
        return len(self.alphas)


def jacobi_from_hankel(h: Sequence, hstar: Sequence) -> JacobiFraction:
    """J-fraction coefficients from Hankel and modified Hankel determinants.

    alpha_n = h*_n/h_n - h*_{n-1}/h_{n-1} (alpha_0 = h*_0/h_0) and
    beta_n = h_{n-2} h_n / h_{n-1}^2 with h_{-1} = 1.
    """
    depth = min(len(h), len(hstar))
    alphas, betas = [], [Fraction(1)]
    prev_ratio = Fraction(0)
    for n in range(depth):
        if h[n] == 0:
            raise ZeroHankelPivot(n)
        ratio = as_fraction(hstar[n]) / h[n]
        alphas.append(ratio - prev_ratio)
        prev_ratio = ratio
        if n >= 1:
            before = h[n - 2] if n >= 2 else 1
            betas.append(as_fraction(before) * h[n] / as_fraction(h[n - 1]) ** 2)
    return JacobiFraction(tuple(alphas), tuple(betas))


def jacobi_from_series(g: PowerSeries) -> JacobiFraction:
    """J-fraction coefficients by repeatedly stripping one level.

    Writing 1/g = 1 - alpha x - x^2 R, alpha is read off directly and
    R = beta * g' with g' the next level (constant term 1).
    """
    if g.order == 0 or g[0] != 1:
        raise ValueError("series must start with constant term 1")
    alphas, betas = [], [Fraction(1)]
    cur = g
    level = 0
    terminated = False
    while cur.order >= 2:
        inv = cur.reciprocal()
        alpha = -inv[1]
        if cur.order < 3:
            alphas.append(alpha)
            break
        rest = -drop_prefix(inv, 2)
        beta = rest[0]
        if beta == 0:
            if any(rest.coeffs):
                raise ZeroHankelPivot(level + 1)
            alphas.append(alpha)
            terminated = True
            break
        nxt = rest / beta
        alphas.append(alpha)
        if nxt.order < 2:
            break
        betas.append(beta)
        cur = nxt
        level += 1
    return JacobiFraction(tuple(alphas), tuple(betas), terminated)


def series_from_jacobi(jf: JacobiFraction, count: int) -> PowerSeries:
    """Expand a (finite) J-fraction to ``count`` coefficients."""
    needed = (count + 1) // 2
    if jf.depth < needed and not jf.terminated:
        raise InsufficientDepth(f"{count} coefficients need {needed} levels, fraction has {jf.depth}")
    if jf.depth == 0:
        raise InsufficientDepth("empty J-fraction")
    x = PowerSeries.monomial(1, count)
    levels = jf.depth if jf.terminated else min(jf.depth, needed)
    cur = 1 / (1 - jf.alphas[levels - 1] * x)
    for k in range(levels - 2, -1, -1):
        cur = 1 / (1 - jf.alphas[k] * x - jf.betas[k + 1] * (cur.shift(2).truncate(count)))
    return cur


@dataclass(frozen=True)
class SomosParams:
    """h_n h_{n-4} = s h_{n-1} h_{n-3} + t h_{n-2}^2."""

    s: Fraction
    t: Fraction


@dataclass(frozen=True)
class NoFit:
    first_violation: Optional[int]
    reason: str


def somos_residual(h: Sequence, n: int, s, t) -> Fraction:
    return h[n] * h[n - 4] - s * h[n - 1] * h[n - 3] - t * h[n - 2] ** 2


def somos4_fit(h: Sequence):
    """Solve for Somos-4 parameters from two windows, then check every window.

    Returns :class:`SomosParams` or :class:`NoFit`.
    """
    h = [as_fraction(v) for v in h]
    if len(h) < 6:
        raise InsufficientTerms("Somos-4 fitting needs at least six terms")
    windows = range(4, len(h))
    solution = None
    for i, n in enumerate(windows):
        for m in windows[i + 1:]:
            p1, q1, r1 = h[n - 1] * h[n - 3], h[n - 2] ** 2, h[n] * h[n - 4]
            p2, q2, r2 = h[m - 1] * h[m - 3], h[m - 2] ** 2, h[m] * h[m - 4]
            det = p1 * q2 - p2 * q1
            if det != 0:
                solution = ((r1 * q2 - r2 * q1) / det, (p1 * r2 - p2 * r1) / det)
                break
        if solution:
            break
    if solution is None:
        return NoFit(None, "every pair of windows is linearly dependent")
    s, t = solution
    for n in windows:
        if somos_residual(h, n, s, t) != 0:
            return NoFit(n, f"window n={n} violates the fitted ({s}, {t}) recurrence")
    return SomosParams(s, t)


@dataclass
class SomosReport:
    s: Fraction
    t: Fraction
    windows: list = field(default_factory=list)

    @property
    def first_failure(self) -> Optional[int]:
        return next((n for n, ok in self.windows if not ok), None)

    @property
    def passed(self) -> bool:
        return self.first_failure is None


def somos4_verify(h: Sequence, s, t) -> SomosReport:
    h = [as_fraction(v) for v in h]
    s, t = as_fraction(s), as_fraction(t)
    report = SomosReport(s, t)
    for n in range(4, len(h)):
        report.windows.append((n, somos_residual(h, n, s, t) == 0))
    return report


def somos4_extend(seed: Sequence, s, t, count: int) -> list:
    """Continue a Somos-4 sequence from its first four terms."""
    out = [as_fraction(v) for v in seed[:4]]
    s, t = as_fraction(s), as_fraction(t)
    while len(out) < count:
        n = len(out)
        out.append((s * out[n - 1] * out[n - 3] + t * out[n - 2] ** 2) / out[n - 4])
    return out[:count]


def alternating_pairs(terms: Sequence, start: int = 0) -> list:
    """Multiply the term of index n by (-1)^C(n,2)."""
    return [(-1 if ((start + i) * (start + i - 1) // 2) % 2 else 1) * as_fraction(v)
            for i, v in enumerate(terms)]
