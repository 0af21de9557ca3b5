import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltah import (DeltaNeutralityError, ParameterError, ParameterSet,
                    derive, validate)
from deltah.params import rho_product_form


def test_validate_accepts_unit_weights():
    ps = ParameterSet(A=(1,), a=(0,), B=(1,), b=(1,))
    assert validate(ps) is ps


def test_validate_accepts_generic_balanced_set():
    ps = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))
    assert validate(ps) is ps


def test_validate_rejects_unbalanced_weights():
    with pytest.raises(DeltaNeutralityError):
        validate(ParameterSet(A=(1,), a=(0,), B=(2,), b=(1,)))


def test_validate_rejects_nonpositive_weights():
    with pytest.raises(ParameterError):
        validate(ParameterSet(A=(0.0, 2.0), a=(0, 0), B=(1, 1), b=(0, 0)))
    with pytest.raises(ParameterError):
        validate(ParameterSet(A=(-1.0, 3.0), a=(0, 0), B=(1, 1), b=(0, 0)))


def test_validate_rejects_length_mismatch():
    with pytest.raises(ParameterError):
        validate(ParameterSet(A=(1, 1), a=(0,), B=(1, 1), b=(0, 0)))


def test_derive_g_case_constants():
    d = derive(ParameterSet.g_case((0.0,), (1.0,)))
    assert d.rho == 1.0
    assert d.nu == 1.0
    assert d.mu == 1.0
    assert d.gamma_pole == 0.0
    assert d.is_g_case


def test_derive_rho_paper_value():
    # direct evaluation of the support radius for weights (1/2, 3/2 | 1, 1)
    ps = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))
    d = derive(ps)
    assert d.rho == pytest.approx(0.5 ** 0.5 * 1.5 ** 1.5, rel=1e-14)
    assert d.rho == pytest.approx(1.299038105676658, rel=1e-12)


def test_derive_is_pure():
    ps = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))
    d1, d2 = derive(ps), derive(ps)
    assert d1 == d2


def test_rho_log_form_matches_product_form():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = int(rng.integers(1, 4))
        A = rng.uniform(0.3, 5.0, p)
        B = rng.uniform(0.3, 5.0, p)
        B *= A.sum() / B.sum()
        ps = ParameterSet(A, rng.uniform(-1, 2, p), B, rng.uniform(-1, 2, p))
        d = derive(ps)
        assert d.rho == pytest.approx(rho_product_form(ps), rel=1e-13)


def test_gamma_pole_g_case():
    ps = ParameterSet.g_case((0.4, -0.2, 1.1), (0.5, 0.5, 0.3))
    assert derive(ps).gamma_pole == pytest.approx(0.2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 3), min_size=1, max_size=4))
def test_g_case_mu_matches_shift_sums(shifts):
    b = [s + 0.25 for s in shifts]
    d = derive(ParameterSet.g_case(shifts, b))
    assert d.mu == pytest.approx(math.fsum(b) - math.fsum(shifts), abs=1e-12)
    assert d.rho == 1.0


def test_json_round_trip():
    ps = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))
    again = ParameterSet.from_json(json.dumps(ps.to_dict()))
    assert again == ps


def test_from_dict_missing_key():
    with pytest.raises(ParameterError):
        ParameterSet.from_dict({"A": [1], "a": [0], "B": [1]})
