import math
from fractions import Fraction

import numpy as np
import pytest

from deltah import HypSeriesSpec, ParameterSet, g11_closed, g22_closed, pfq
from deltah.errors import DomainError, PoleError
from deltah.evaluator import ContourSpec, eval_contour
from deltah.hypergeometric import gauss_2f1_regularized

from oracles import meijer_g_mpmath


def test_binomial_reduction():
    spec = HypSeriesSpec((0.5, 1.7), (1.7,), 0.3)
    assert pfq(spec) == pytest.approx((1 - 0.3) ** -0.5, rel=1e-13)


def test_log_reduction():
    spec = HypSeriesSpec((1.0, 1.0), (2.0,), 0.5)
    assert pfq(spec) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-13)


def test_terminating_3f2_at_unit_argument():
    spec = HypSeriesSpec((-2.0, 0.8, 1.1), (1.5, 2.0), 1.0)
    # exact rational sum of the three terms: 5261/9375
    assert pfq(spec) == pytest.approx(float(Fraction(5261, 9375)), rel=1e-14)


def test_termination_uses_exactly_n_plus_one_terms():
    # upper parameter -4 terminates after 5 terms; max_terms = 6 would be
    # fatal for a non-terminating loop given the tiny tail_tol
    spec = HypSeriesSpec((-4.0, 0.9), (1.3,), 0.7, max_terms=6, tail_tol=0.0)
    manual, term = 0.0, 1.0
    for n in range(5):
        manual += term
        term *= (-4.0 + n) * (0.9 + n) / (1.3 + n) / (n + 1) * 0.7
    assert pfq(spec) == pytest.approx(manual, rel=1e-14)


def test_nonterminating_at_unit_argument_rejected():
    with pytest.raises(DomainError):
        pfq(HypSeriesSpec((0.5, 0.6), (1.4,), 1.0))


def test_lower_pole_before_termination_rejected():
    with pytest.raises(PoleError):
        pfq(HypSeriesSpec((-5.0, 0.6), (-2.0,), 0.5))
    # pole after termination is harmless
    assert pfq(HypSeriesSpec((-1.0, 0.6), (-2.0,), 0.5)) == pytest.approx(
        1.0 + (-1.0) * 0.6 / (-2.0) * 0.5, rel=1e-14)


def test_gauss_summation_chu_vandermonde():
    # terminating 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    from deltah import pochhammer
    n, b, c = 4, 0.8, 2.3
    expect = pochhammer(c - b, n) / pochhammer(c, n)
    assert pfq(HypSeriesSpec((-float(n), b), (c,), 1.0)) == pytest.approx(
        expect, rel=1e-13)


def test_g11_unit_box():
    assert g11_closed(0.0, 1.0, 0.4) == 1.0
    assert g11_closed(0.0, 1.0, 0.9) == 1.0


def test_g11_flat_exponent():
    assert g11_closed(0.3, 1.3, 0.5) == pytest.approx(0.5 ** 0.3, rel=1e-14)


def test_g11_degenerate_zero():
    assert g11_closed(0.7, 0.7, 0.5) == 0.0


def test_g11_domain_guard():
    with pytest.raises(DomainError):
        g11_closed(0.1, 0.9, 1.5)


def test_g22_against_mpmath_grid():
    a1, a2, b1, b2 = 0.2, 0.5, 1.1, 0.8
    for z in np.linspace(0.05, 0.95, 10):
        ref = meijer_g_mpmath((a1, a2), (b1, b2), float(z))
        assert g22_closed(a1, a2, b1, b2, float(z)) == pytest.approx(
            ref, rel=1e-12)


def test_g22_upper_swap_symmetry():
    a1, a2, b1, b2 = 0.2, 0.5, 1.1, 0.8
    assert g22_closed(a1, a2, b1, b2, 0.35) == pytest.approx(
        g22_closed(a1, a2, b2, b1, 0.35), rel=1e-13)


def test_g22_pairing_convention_equivalence():
    # prefactor z^(a2) with shifts b-a1 equals prefactor z^(a1) with shifts
    # b-a2 (an Euler transformation); both must match the contour value
    a1, a2, b1, b2 = 0.2, 0.5, 1.1, 0.8
    psi = b1 + b2 - a1 - a2
    z = 0.4
    printed = g22_closed(a1, a2, b1, b2, z)
    swapped = z ** a1 * float(gauss_2f1_regularized(
        b1 - a2, b2 - a2, psi, 1.0 - z, embed_power=psi - 1.0))
    assert printed == pytest.approx(swapped, rel=1e-12)
    ps = ParameterSet.g_case((a1, a2), (b1, b2))
    contour = eval_contour(ps, z, ContourSpec(tail_tol=1e-12)).value
    assert printed == pytest.approx(contour, rel=1e-9)


def test_g22_degenerate_psi_collapses_to_g11():
    # upper shift equal to a lower shift cancels one gamma pair
    a, b1 = 0.3, 1.4
    for z in (0.2, 0.7):
        assert g22_closed(a, a, b1, a, z) == pytest.approx(
            g11_closed(a, b1, z), rel=1e-12)


def test_g22_nonpositive_integer_psi():
    sets = [((0.5, 0.7), (0.4, 0.8)), ((0.5, 1.0), (0.2, 0.3))]  # psi = 0, -1
    for a, b in sets:
        for z in (0.3, 0.7):
            ref = meijer_g_mpmath(a, b, z)
            assert g22_closed(a[0], a[1], b[0], b[1], z) == pytest.approx(
                ref, rel=1e-11, abs=1e-14)


@pytest.mark.parametrize("case", ["g11", "g22"])
def test_series_contour_agreement_on_grid(case):
    if case == "g11":
        ps = ParameterSet.g_case((0.3,), (1.5,))
        closed = lambda z: g11_closed(0.3, 1.5, z)
    else:
        ps = ParameterSet.g_case((0.2, 0.5), (1.1, 0.8))
        closed = lambda z: g22_closed(0.2, 0.5, 1.1, 0.8, z)
    for z in np.linspace(0.05, 0.95, 10):
        r = eval_contour(ps, float(z), ContourSpec(tail_tol=1e-10))
        assert r.value == pytest.approx(closed(float(z)), rel=1e-7)
