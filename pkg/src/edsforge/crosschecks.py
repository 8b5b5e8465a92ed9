"""Cross-checks between pipeline output and the cited OEIS sequences."""

from __future__ import annotations

from edsforge import oeis
from edsforge.curve import CubicCurve, division_values
from edsforge.hankel import hankel_transform
from edsforge.pipeline import forward
from edsforge.series import PowerSeries, drop_prefix, sqrt

TERMS = 24


def _poly(coeffs, order=TERMS):
    return PowerSeries.polynomial(coeffs, order)


def a178072_series(order: int = TERMS) -> PowerSeries:
    """2/(1 + 2x + x^2 + sqrt(1 - 4x + 6x^2 + x^4))."""
    return 2 / (_poly([1, 2, 1], order) + sqrt(_poly([1, -4, 6, 0, 1], order)))


def a178078_series(order: int = TERMS) -> PowerSeries:
    """(1 - 3x - x^2 - sqrt(1 - 6x + 7x^2 + 2x^3 + x^4))/(2x^3)."""
    numerator = _poly([1, -3, -1], order + 3) - sqrt(_poly([1, -6, 7, 2, 1], order + 3))
    return drop_prefix(numerator, 3) / 2


def run_all(offline=None) -> dict:
    """Run every cross-check; the report maps a check name to its verdict."""
    checks = {}

    def check(name, computed, id, shift=0, sign_rule="none"):
        checks[name] = oeis.cross_check(computed, id, shift, sign_rule, offline=offline)

    node = forward(CubicCurve(1, 1, -2, 0), TERMS, allow_singular=True)
    check("fibonacci_hankel", node.hankel.htilde, "A000045", 1, "alternate_pairs")
    # |y_(n+2)| = C(n) + C(n+1) on the solved branch of the same nodal cubic
    catalan = oeis.fetch("A000108", offline=offline)
    y = node.branch_series
    tail = [(-1) ** n * y[n + 2] for n in range(len(y) - 2)]
    pairs = [catalan.term(n) + catalan.term(n + 1) for n in range(min(len(tail), len(catalan.terms) - 1))]
    checks["catalan_branch"] = {"id": "A000108", "shift": 0, "sign_rule": "alternate",
                                "source": catalan.source, **oeis.compare_terms(tail, pairs)}

    pell = forward(CubicCurve(0, 2, -1, -1), TERMS, allow_singular=True)
    check("pell_hankel", pell.hankel.htilde, "A000129", 1, "alternate_pairs")

    E = CubicCurve(0, 1, 0, -1)
    stages = forward(E, TERMS)
    check("dropped_stage", stages.dropped, "A056010")
    check("dropped_stage_shifted", stages.dropped, "A025262", 1)
    check("dropped_stage_hankel", hankel_transform(stages.dropped, TERMS // 2 - 1), "A006720", 3)
    check("wrapped_stage", stages.wrapped1, "A157003")
    check("wrapped_stage_hankel", hankel_transform(stages.wrapped1, TERMS // 2), "A006720", 2)
    check("reverted_stage_hankel", hankel_transform(stages.reverted, TERMS // 2), "A006769", 2)
    check("final_hankel", stages.hankel.h, "A006769", 1)
    check("division_values", division_values(E, E.point(0, 0), TERMS), "A006769")

    g0 = a178072_series()
    check("a178072_series", g0, "A178072")
    check("a178072_hankel", hankel_transform(g0, TERMS // 2), "A006769", 2)

    g1 = a178078_series()
    check("a178078_series", g1, "A178078")
    check("a178078_hankel", hankel_transform(g1, TERMS // 2), "A178079", 1)
    ex2 = forward(CubicCurve(1, -1, 3, 2), TERMS)
    check("somos_1_minus1_hankel", ex2.hankel.h, "A178079")

    return {"checks": checks, "passed": all(c["passed"] for c in checks.values())}
