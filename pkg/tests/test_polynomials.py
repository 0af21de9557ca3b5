import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltah import (bernoulli_number, bernoulli_poly, noerlund_poly,
                    pochhammer, stirling_noncentral)
from deltah.errors import DomainError
from deltah.polynomials import BernoulliCache, bernoulli_scaled

from oracles import (bernoulli_numbers_exact, bernoulli_poly_exact,
                     noerlund_poly_mpmath, stirling_noncentral_bruteforce)


def test_bernoulli_numbers_against_exact():
    exact = bernoulli_numbers_exact(30)
    for n in range(31):
        assert bernoulli_number(n) == pytest.approx(float(exact[n]),
                                                    rel=1e-14, abs=1e-300)


def test_bernoulli_scaled_matches_numbers():
    for n in range(0, 40):
        assert bernoulli_scaled(n) == pytest.approx(
            bernoulli_number(n) / math.factorial(n), rel=1e-13, abs=1e-300)


def test_cache_is_append_only():
    cache = BernoulliCache(8)
    before = list(cache.bernoulli_numbers)
    cache.extend(20)
    assert cache.bernoulli_numbers[:9] == before
    assert cache.max_order >= 20


def test_odd_bernoulli_vanish():
    for n in range(3, 31, 2):
        assert abs(bernoulli_number(n)) < 1e-15


def test_bernoulli_poly_base_cases():
    assert bernoulli_poly(0, 3.7) == 1.0
    # Taylor oracle: B_1(x) = x - 1/2, B_2(0) = 1/6
    assert bernoulli_poly(1, 0.5) == pytest.approx(
        float(bernoulli_poly_exact(1, Fraction(1, 2))), abs=1e-16)
    assert bernoulli_poly(2, 0.0) == pytest.approx(
        float(bernoulli_poly_exact(2, Fraction(0))), rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
@pytest.mark.parametrize("x", [Fraction(0), Fraction(3, 10), Fraction(-3, 4),
                               Fraction(2)])
def test_bernoulli_poly_against_exact_taylor(n, x):
    assert bernoulli_poly(n, float(x)) == pytest.approx(
        float(bernoulli_poly_exact(n, x)), rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 13))
def test_bernoulli_difference_identity(n):
    # B_n(x+1) - B_n(x) = n x^(n-1)
    for x in (-1.2, 0.0, 0.4, 2.5):
        lhs = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x)
        assert lhs == pytest.approx(n * x ** (n - 1), rel=1e-11, abs=1e-11)


def test_noerlund_constant_term():
    for sigma in (-1.3, 0.0, 0.7, 5.0):
        assert noerlund_poly(0, sigma, 0.123) == 1.0


def test_noerlund_order_one():
    # generating-function expansion gives x - sigma/2 at first order
    assert noerlund_poly(1, 3.0, 2.0) == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("k", range(0, 11))
def test_noerlund_reduces_to_bernoulli_at_unit_order(k):
    for x in (0.0, 0.3, 1.7):
        assert noerlund_poly(k, 1.0, x) == pytest.approx(
            bernoulli_poly(k, x), rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("k,sigma,x", [(3, 2.3, -0.4), (6, 2.3, -0.4),
                                       (5, -1.2, 0.8), (8, 4.5, 1.1)])
def test_noerlund_against_mpmath_taylor(k, sigma, x):
    assert noerlund_poly(k, sigma, x) == pytest.approx(
        noerlund_poly_mpmath(k, sigma, x), rel=1e-9)


def test_noerlund_order_cap():
    with pytest.raises(DomainError):
        noerlund_poly(65, 1.0, 0.0)


def test_stirling_base_cases():
    assert stirling_noncentral(1.7, 0, 0) == 1.0
    assert stirling_noncentral(1.7, 1, 0) == pytest.approx(1.7)
    assert stirling_noncentral(1.7, 1, 1) == 1.0


def test_stirling_classical_value():
    # sigma = 0 reduces to unsigned Stirling numbers: c(4, 2) = 11
    assert stirling_noncentral(0.0, 4, 2) == pytest.approx(11.0)


@pytest.mark.parametrize("sigma", [-1.3, 0.0, 0.7, 2.0])
@pytest.mark.parametrize("n", [2, 5, 8, 10])
def test_stirling_against_bruteforce(sigma, n):
    ref = stirling_noncentral_bruteforce(sigma, n)
    for l in range(n + 1):
        assert stirling_noncentral(sigma, n, l) == pytest.approx(
            ref[l], rel=1e-12, abs=1e-12)


def test_stirling_out_of_triangle():
    with pytest.raises(DomainError):
        stirling_noncentral(0.5, 3, 4)


@settings(max_examples=60, deadline=None)
@given(sigma=st.sampled_from([-1.3, 0.0, 0.7, 2.0]),
       x=st.sampled_from([-2.0, -0.5, 0.5, 3.0]),
       n=st.integers(min_value=0, max_value=10))
def test_stirling_horizontal_generating_function(sigma, x, n):
    total = math.fsum(stirling_noncentral(sigma, n, l) * x ** l
                      for l in range(n + 1))
    assert total == pytest.approx(pochhammer(sigma + x, n), rel=1e-11, abs=1e-11)


@pytest.mark.parametrize("sigma", [-1.3, 0.0, 0.7, 2.0])
@pytest.mark.parametrize("n", [1, 4, 9, 12])
def test_carlitz_identity(sigma, n):
    # s_sigma(n, l) = (-1)^(n-l) (l+1)_(n-l) / (n-l)! * B^(n+1)_(n-l)(1 - sigma)
    for l in range(n + 1):
        k = n - l
        expected = ((-1) ** k * pochhammer(l + 1.0, k) / math.factorial(k)
                    * noerlund_poly(k, n + 1.0, 1.0 - sigma))
        assert stirling_noncentral(sigma, n, l) == pytest.approx(
            expected, rel=1e-9, abs=1e-9)


def test_pochhammer_values():
    assert pochhammer(2.5, 0) == 1.0
    assert pochhammer(1.0, 5) == 120.0
    assert pochhammer(-3.0, 5) == 0.0
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
