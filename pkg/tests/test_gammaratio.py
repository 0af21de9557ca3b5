import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltah import (ParameterSet, W, W_asymptotic, asymptotic_expansion,
                    derive, digamma, log_gamma)
from deltah.errors import DomainError, PoleError
from deltah.verify import mellin_transform_h

from oracles import gamma_ratio_mpmath

H_SET = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))


def test_log_gamma_classics():
    assert complex(log_gamma(1.0)).real == pytest.approx(0.0, abs=1e-14)
    assert complex(log_gamma(0.5)).real == pytest.approx(math.log(math.sqrt(math.pi)),
                                                         rel=1e-14)
    assert complex(log_gamma(6.0)).real == pytest.approx(math.log(120.0), rel=1e-14)


def test_log_gamma_pole_signaled():
    with pytest.raises(PoleError):
        log_gamma(0.0)
    with pytest.raises(PoleError):
        log_gamma(-3.0)


def test_log_gamma_large_modulus():
    import mpmath as mp
    for z in (1e6, 1e6 + 1e5j, -12.25 + 3e4j):
        ref = complex(mp.loggamma(mp.mpmathify(z)))
        got = complex(log_gamma(z))
        assert abs(got - ref) / abs(ref) < 1e-13


def test_digamma_euler_constant_via_finite_difference():
    # oracle: central difference of log_gamma
    h = 1e-6
    fd = (complex(log_gamma(1.0 + h)) - complex(log_gamma(1.0 - h))).real / (2 * h)
    assert complex(digamma(1.0)).real == pytest.approx(fd, abs=1e-9)
    assert complex(digamma(1.0)).real == pytest.approx(-0.5772156649015329, rel=1e-12)


def test_digamma_recurrence():
    z = 2.5
    assert (complex(digamma(z + 1)) - complex(digamma(z))).real == pytest.approx(
        1 / z, rel=1e-12)
    assert complex(digamma(2.0)).real == pytest.approx(1 - 0.5772156649015329,
                                                       rel=1e-12)


def test_W_unit_shift_is_reciprocal():
    ps = ParameterSet.g_case((0.0,), (1.0,))
    for s in (0.7, 2.0, 5.5):
        assert W(ps, s) == pytest.approx(1.0 / s, rel=1e-13)


def test_W_identical_rows_is_one():
    ps = ParameterSet(A=(0.7, 1.3), a=(0.2, 0.9), B=(0.7, 1.3), b=(0.2, 0.9))
    assert W(ps, 3.3) == pytest.approx(1.0, rel=1e-14)


def test_W_complex_against_gamma_products():
    s = 2 + 3j
    ref = gamma_ratio_mpmath(H_SET.A, H_SET.a, H_SET.B, H_SET.b, s)
    assert complex(W(H_SET, s)) == pytest.approx(ref, rel=1e-12)


def test_W_numerator_pole_and_denominator_zero():
    ps = ParameterSet.g_case((-1.0,), (0.5,))
    with pytest.raises(PoleError):
        W(ps, 1.0)  # numerator argument hits 0
    ps2 = ParameterSet.g_case((0.5,), (-2.0,))
    assert W(ps2, 2.0) == 0.0  # denominator pole gives the limit value


@settings(max_examples=30, deadline=None)
@given(re=st.floats(0.5, 6.0), im=st.floats(0.1, 20.0))
def test_W_reflection_symmetry(re, im):
    s = complex(re, im)
    assert complex(W(H_SET, np.conj(s))) == pytest.approx(
        np.conj(complex(W(H_SET, s))), rel=1e-12)


def test_asymptotic_trivial_case_exact():
    ps = ParameterSet(A=(0.7, 1.3), a=(0.2, 0.9), B=(0.7, 1.3), b=(0.2, 0.9))
    exp = asymptotic_expansion(ps, 6)
    assert exp.l[0] == 1.0
    assert all(abs(v) < 1e-14 for v in exp.l[1:])
    assert W_asymptotic(exp, 17.0) == pytest.approx(1.0, rel=1e-14)


def test_asymptotic_sector_and_radius_guards():
    exp = asymptotic_expansion(H_SET, 4)
    with pytest.raises(DomainError):
        W_asymptotic(exp, -40.0 + 0.1j)  # outside |arg z| < pi - 0.1
    with pytest.raises(DomainError):
        W_asymptotic(exp, 2.0)  # |z| < 5


@pytest.mark.parametrize("M", [0, 1, 2, 3, 4])
def test_asymptotic_error_order(M):
    exp = asymptotic_expansion(H_SET, 8)
    errs = []
    for z in (40.0, 80.0):
        approx = W_asymptotic(exp, z, M)
        exact = complex(W(H_SET, z))
        errs.append(abs(approx - exact) / abs(exact))
    ratio = errs[1] / errs[0]
    target = 2.0 ** -(M + 1)
    assert 0.5 * target <= ratio <= 2.0 * target


def test_forward_mellin_identity_positive_mu():
    # warm-up consistency: the transform of the evaluated density gives back
    # the gamma ratio when mu > 0
    for s in (1.0, 2.0, 3.0):
        val, _, _ = mellin_transform_h(H_SET, s)
        assert val == pytest.approx(float(W(H_SET, s)), rel=1e-6)
