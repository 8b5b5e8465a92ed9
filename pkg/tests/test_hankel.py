from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from edsforge.hankel import (
    HankelData,
    InsufficientDepth,
    InsufficientTerms,
    JacobiFraction,
    NoFit,
    SomosParams,
    ZeroScaleBase,
    alternating_pairs,
    bareiss_det,
    cofactor_det,
    hankel_matrix,
    hankel_transform,
    jacobi_from_hankel,
    jacobi_from_series,
    modified_hankel,
    rescale_hankel,
    series_from_jacobi,
    somos4_extend,
    somos4_fit,
    somos4_verify,
)
from edsforge.series import PowerSeries, binomial_transform, invert_transform, revert

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=5)
CATALAN = revert(PowerSeries.polynomial([1, -1], 20))


def test_determinants_small():
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    m = [[Fraction(1, 2), 3, 0], [0, 0, 5], [7, Fraction(-1, 3), 2]]
    assert bareiss_det(m) == cofactor_det(m) == Fraction(635, 6)


def test_catalan_hankel_is_all_ones():
    assert hankel_transform(CATALAN, 10) == [1] * 10
    assert modified_hankel(CATALAN, 5) == [1, 3, 5, 7, 9]


def test_hankel_needs_terms():
    with pytest.raises(InsufficientTerms):
        hankel_transform([1, 2, 3], 3)
    with pytest.raises(InsufficientTerms):
        modified_hankel([1, 2, 3], 2)


def test_rescale():
    assert rescale_hankel([1, 1, -71, -1633125], 5) == [1, 5, -71, -13065]
    with pytest.raises(ZeroScaleBase):
        rescale_hankel([1], 0)


def test_hankel_data():
    hd = HankelData.of(CATALAN.coeffs[:9], 1)
    assert hd.h == (1,) * 5 and hd.hstar == (1, 3, 5, 7) and hd.htilde == hd.h


def test_catalan_jacobi():
    jf = jacobi_from_series(CATALAN)
    assert jf.alphas[:4] == (1, 2, 2, 2)
    assert jf.betas[:4] == (1, 1, 1, 1)
    by_hankel = jacobi_from_hankel(hankel_transform(CATALAN, 6), modified_hankel(CATALAN, 6))
    assert by_hankel.alphas == jf.alphas[:6] and by_hankel.betas == jf.betas[:6]


def test_terminated_fraction():
    g = 1 / PowerSeries.polynomial([1, -2], 8)
    jf = jacobi_from_series(g)
    assert jf.terminated and jf.alphas == (2,) and jf.betas == (1,)
    assert series_from_jacobi(jf, 8) == g


def test_depth_checks():
    with pytest.raises(InsufficientDepth):
        series_from_jacobi(JacobiFraction((1, 1), (1, 1)), 6)
    with pytest.raises(ValueError):
        JacobiFraction((1, 2), (1,))


def test_somos_fit_fixed_sequences():
    fit = somos4_fit([1, 1, 1, 1, 2, 3, 7, 23, 59, 314])
    assert fit == SomosParams(1, 1)
    bad = somos4_fit([1, 1, 1, 1, 2, 3, 7, 23, 59, 315])
    assert isinstance(bad, NoFit) and bad.first_violation == 9
    assert isinstance(somos4_fit([0] * 8), NoFit)
    with pytest.raises(InsufficientTerms):
        somos4_fit([1, 2, 3])


def test_somos_verify_and_extend():
    h = somos4_extend([1, 1, 1, 2], 1, -1, 10)
    assert h == [1, 1, 1, 2, 1, -3, -7, -8, -25, -37]
    report = somos4_verify(h, 1, -1)
    assert report.passed and len(report.windows) == 6
    assert somos4_verify(h, 1, 1).first_failure == 4


def test_alternating_pairs():
    assert alternating_pairs([1, 1, 1, 1, 1]) == [1, 1, -1, -1, 1]


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(rationals, min_size=2 * n - 1, max_size=2 * n - 1)))
def test_bareiss_matches_cofactor_on_hankel(a):
    n = (len(a) + 1) // 2
    m = hankel_matrix(a, n - 1)
    assert bareiss_det(m) == cofactor_det(m)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_general(m):
    assert bareiss_det(m) == cofactor_det(m)


@st.composite
def jacobi(draw, levels=5):
    alphas = draw(st.lists(st.integers(-3, 3), min_size=levels, max_size=levels))
    betas = [1] + draw(st.lists(st.integers(-3, 3).filter(bool), min_size=levels - 1, max_size=levels - 1))
    return JacobiFraction(tuple(alphas), tuple(betas))


@given(jacobi())
def test_jacobi_round_trip(jf):
    g = series_from_jacobi(jf, 10)
    assert jacobi_from_series(g) == jf
    h, hs = hankel_transform(g, 5), modified_hankel(g, 5)
    assert jacobi_from_hankel(h, hs) == jf


@given(jacobi())
def test_hankel_depends_only_on_betas(jf):
    # h_n = prod_{k<=n} beta_k^(n-k+1)
    g = series_from_jacobi(jf, 9)
    expected, running = [], Fraction(1)
    prod = Fraction(1)
    for n in range(5):
        running *= jf.betas[n]
        prod *= running
        expected.append(prod)
    assert hankel_transform(g, 5) == expected


@given(st.lists(st.integers(-4, 4), min_size=11, max_size=11).map(lambda t: PowerSeries([1] + t)),
       st.integers(-4, 4))
def test_hankel_invariant_under_binomial(g, r):
    assert hankel_transform(binomial_transform(g, r), 6) == hankel_transform(g, 6)


@given(st.lists(st.integers(-4, 4), min_size=11, max_size=11).map(lambda t: PowerSeries([1] + t)),
       st.integers(-4, 4))
def test_hankel_invariant_under_invert(g, r):
    assert hankel_transform(invert_transform(g, r), 6) == hankel_transform(g, 6)


@given(st.lists(st.integers(-5, 5).filter(bool), min_size=4, max_size=4),
       st.integers(-3, 3), st.integers(-3, 3))
def test_somos_fit_recovers_parameters(seed, s, t):
    try:
        h = somos4_extend(seed, s, t, 10)
    except ZeroDivisionError:
        assume(False)
    fit = somos4_fit(h)
    # two independent windows determine (s, t) uniquely
    assert fit == SomosParams(s, t) or (isinstance(fit, NoFit) and fit.first_violation is None)
